//! Bit-exact framing for raw sample streams and extractor output.
//!
//! Streams are flat bit sequences read least-significant-bit first within
//! each byte. A b-bit sample occupies b consecutive stream bits with its own
//! bit 0 first, so concatenating samples is the same as reading the stream.

use std::io::{self, ErrorKind, Read, Write};

const BUF_SIZE: usize = 64 * 1024;

/// Pulls runs of up to 128 bits from a byte source.
pub struct BitReader<R> {
    inner: R,
    buf: Box<[u8]>,
    pos: usize,
    len: usize,
    acc: u64,
    acc_len: u32,
    bits_read: u64,
    eof: bool,
}

impl<R: Read> BitReader<R> {
    pub fn new(inner: R) -> Self {
        Self {
            inner,
            buf: vec![0u8; BUF_SIZE].into_boxed_slice(),
            pos: 0,
            len: 0,
            acc: 0,
            acc_len: 0,
            bits_read: 0,
            eof: false,
        }
    }

    /// Total bits handed out, including those of a read that hit end of input.
    pub fn bits_read(&self) -> u64 {
        self.bits_read
    }

    fn next_byte(&mut self) -> io::Result<Option<u8>> {
        if self.pos == self.len {
            if self.eof {
                return Ok(None);
            }
            loop {
                match self.inner.read(&mut self.buf) {
                    Ok(0) => {
                        self.eof = true;
                        return Ok(None);
                    }
                    Ok(n) => {
                        self.pos = 0;
                        self.len = n;
                        break;
                    }
                    Err(e) if e.kind() == ErrorKind::Interrupted => continue,
                    Err(e) => return Err(e),
                }
            }
        }
        let b = self.buf[self.pos];
        self.pos += 1;
        Ok(Some(b))
    }

    /// Reads `width` bits (1..=128). Returns `None` when the input ends
    /// first; the partial bits still count toward [`bits_read`](Self::bits_read).
    pub fn read_bits(&mut self, width: u32) -> io::Result<Option<u128>> {
        debug_assert!((1..=128).contains(&width));
        let mut out = 0u128;
        let mut got = 0u32;
        // byte-aligned fast path
        while self.acc_len == 0 && width - got >= 8 {
            match self.next_byte()? {
                Some(b) => {
                    out |= (b as u128) << got;
                    got += 8;
                    self.bits_read += 8;
                }
                None => return Ok(None),
            }
        }
        while got < width {
            if self.acc_len == 0 {
                match self.next_byte()? {
                    Some(b) => {
                        self.acc = b as u64;
                        self.acc_len = 8;
                    }
                    None => return Ok(None),
                }
            }
            let take = (width - got).min(self.acc_len);
            let chunk = self.acc & ((1u64 << take) - 1);
            out |= (chunk as u128) << got;
            self.acc >>= take;
            self.acc_len -= take;
            got += take;
            self.bits_read += take as u64;
        }
        Ok(Some(out))
    }
}

/// Packs bit runs into bytes, least-significant-bit first.
pub struct BitWriter<W: Write> {
    inner: W,
    buf: Vec<u8>,
    acc: u8,
    acc_len: u32,
    bits_written: u64,
}

impl<W: Write> BitWriter<W> {
    pub fn new(inner: W) -> Self {
        Self {
            inner,
            buf: Vec::with_capacity(BUF_SIZE),
            acc: 0,
            acc_len: 0,
            bits_written: 0,
        }
    }

    pub fn bits_written(&self) -> u64 {
        self.bits_written
    }

    /// Writes the low `width` bits of `value` (width <= 128).
    pub fn write_bits(&mut self, value: u128, width: u32) -> io::Result<()> {
        debug_assert!(width <= 128);
        let mut rest = width;
        let mut v = value;
        while rest > 0 {
            if self.acc_len == 0 && rest >= 8 {
                self.buf.push(v as u8);
                v = v.checked_shr(8).unwrap_or(0);
                rest -= 8;
                continue;
            }
            let take = rest.min(8 - self.acc_len);
            let chunk = (v as u8) & (((1u16 << take) - 1) as u8);
            self.acc |= chunk << self.acc_len;
            self.acc_len += take;
            v = v.checked_shr(take).unwrap_or(0);
            rest -= take;
            if self.acc_len == 8 {
                self.buf.push(self.acc);
                self.acc = 0;
                self.acc_len = 0;
            }
        }
        self.bits_written += width as u64;
        if self.buf.len() >= BUF_SIZE {
            self.inner.write_all(&self.buf)?;
            self.buf.clear();
        }
        Ok(())
    }

    /// Zero-pads the last partial byte, flushes, and returns the pad length
    /// in bits together with the inner writer.
    pub fn finish(mut self) -> io::Result<(u32, W)> {
        let pad = if self.acc_len == 0 {
            0
        } else {
            8 - self.acc_len
        };
        if self.acc_len > 0 {
            self.buf.push(self.acc);
        }
        self.inner.write_all(&self.buf)?;
        self.inner.flush()?;
        Ok((pad, self.inner))
    }
}
