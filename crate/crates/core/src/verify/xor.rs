//! The XOR lemma with classical side information, and the correspondence
//! between parities S.Z and the functionals [a * Z]_1.

use crate::error::{Error, Result};
use crate::gf2q::{FieldElement, GfContext};

pub const MAX_XOR_BITS: u32 = 4;
pub const MAX_SIDE_VALUES: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct XorLemmaReport {
    pub q: u32,
    pub side_values: usize,
    /// || P_ZE - U_q x P_E ||_1
    pub lhs: f64,
    /// 2^q sum over S != 0 of || P_(S.Z)E - U_1 x P_E ||_1
    pub rhs: f64,
}

impl XorLemmaReport {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + 1e-12
    }
}

fn parity(v: usize) -> usize {
    v.count_ones() as usize & 1
}

/// `joint[e][z]` is Pr[E = e, Z = z] for z in {0,1}^q.
pub fn check_xor_lemma_instance(q: u32, joint: &[Vec<f64>]) -> Result<XorLemmaReport> {
    if q == 0 || q > MAX_XOR_BITS {
        return Err(Error::Infeasible(format!(
            "q must lie in 1..={MAX_XOR_BITS}"
        )));
    }
    if joint.is_empty() || joint.len() > MAX_SIDE_VALUES {
        return Err(Error::Infeasible(format!(
            "side information must take 1..={MAX_SIDE_VALUES} values"
        )));
    }
    let size = 1usize << q;
    if joint.iter().any(|row| row.len() != size) {
        return Err(Error::invalid(format!(
            "each side value needs {size} entries"
        )));
    }
    let total: f64 = joint.iter().flatten().sum();
    if joint
        .iter()
        .flatten()
        .any(|p| !(p.is_finite() && *p >= 0.0))
        || (total - 1.0).abs() > 1e-9
    {
        return Err(Error::invalid("joint table is not a distribution"));
    }
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for row in joint {
        let pe: f64 = row.iter().sum();
        lhs += row
            .iter()
            .map(|p| (p - pe / size as f64).abs())
            .sum::<f64>();
        for s in 1..size {
            let odd: f64 = (0..size)
                .filter(|z| parity(z & s) == 1)
                .map(|z| row[z])
                .sum();
            let even = pe - odd;
            rhs += (odd - pe / 2.0).abs() + (even - pe / 2.0).abs();
        }
    }
    Ok(XorLemmaReport {
        q,
        side_values: joint.len(),
        lhs,
        rhs: rhs * size as f64,
    })
}

/// True iff every nonzero S has exactly one nonzero a with
/// S.Z = [a * Z]_1 for all Z, and distinct S get distinct a.
pub fn check_functional_bijection(ctx: &GfContext) -> Result<bool> {
    let q = ctx.degree();
    if q > MAX_XOR_BITS * 2 {
        return Err(Error::Infeasible(format!(
            "q must be at most {}",
            MAX_XOR_BITS * 2
        )));
    }
    let size = 1usize << q;
    let table_of = |f: &dyn Fn(usize) -> bool| -> Vec<bool> { (0..size).map(f).collect() };
    let functionals: Vec<Vec<bool>> = (1..size)
        .map(|a| {
            table_of(&|z| {
                ctx.mul_unchecked(
                    FieldElement::from_bits(a as u128),
                    FieldElement::from_bits(z as u128),
                )
                .bit(0)
            })
        })
        .collect();
    let mut used = vec![false; size];
    for s in 1..size {
        let target = table_of(&|z| parity(z & s) == 1);
        let matches: Vec<usize> = functionals
            .iter()
            .enumerate()
            .filter(|(_, f)| **f == target)
            .map(|(i, _)| i + 1)
            .collect();
        match matches[..] {
            [a] if !used[a] => used[a] = true,
            _ => return Ok(false),
        }
    }
    Ok(true)
}
