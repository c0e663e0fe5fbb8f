//! Arithmetic in GF(2^q) with the built-in modulus table and with a custom
//! irreducible modulus.
//!
//!     cargo run --example field_arithmetic

use twosource::gf2q::{is_irreducible, BinaryPoly, FieldElement, GfContext};

fn main() -> twosource::Result<()> {
    let f80 = GfContext::new(80)?;
    println!("GF(2^80) modulus: {}", f80.modulus());

    let x = f80.element(0x1234_5678_9abc_def0_1234)?;
    let y = f80.element(0xfedc_ba98_7654_3210_fedc)?;
    let xy = f80.mul(x, y)?;
    let inv = f80.inverse(x)?.expect("x is nonzero");
    println!("x * y      = {:#x}", xy.bits());
    println!("x * x^-1   = {:#x}", f80.mul(x, inv)?.bits());

    // the AES field, with its usual modulus x^8 + x^4 + x^3 + x + 1
    let aes = BinaryPoly::from_exponents(&[8, 4, 3, 1, 0]);
    assert!(is_irreducible(&aes)?);
    let f256 = GfContext::with_modulus(&aes)?;
    let p = f256.mul(FieldElement::from_bits(0x57), FieldElement::from_bits(0x83))?;
    println!("0x57 * 0x83 in the AES field = {:#04x}", p.bits());

    // reducible moduli are rejected
    let reducible = BinaryPoly::from_exponents(&[8, 0]);
    println!(
        "x^8 + 1 accepted: {}",
        GfContext::with_modulus(&reducible).is_ok()
    );
    Ok(())
}
