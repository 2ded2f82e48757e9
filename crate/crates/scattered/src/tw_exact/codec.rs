use crate::error::{Error, Result};

/// Mixed-radix encoding of state vectors; the first bag position is most significant,
/// so numeric order on codes is lexicographic order on state vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codec {
    pub radix: u32,
    pub len: usize,
}

impl Codec {
    pub fn new(radix: u32, len: usize) -> Result<Self> {
        let mut cap: u128 = 1;
        for _ in 0..len {
            cap = cap
                .checked_mul(radix as u128)
                .ok_or_else(|| Error::TooLarge(format!("{radix}^{len} state vectors do not fit a 128-bit code")))?;
        }
        Ok(Codec { radix, len })
    }

    pub fn encode(&self, states: &[u32]) -> u128 {
        debug_assert_eq!(states.len(), self.len);
        states.iter().fold(0u128, |acc, &s| acc * self.radix as u128 + s as u128)
    }

    pub fn decode(&self, mut code: u128) -> Vec<u32> {
        let mut out = vec![0; self.len];
        for i in (0..self.len).rev() {
            out[i] = (code % self.radix as u128) as u32;
            code /= self.radix as u128;
        }
        out
    }

    pub fn get(&self, code: u128, pos: usize) -> u32 {
        let shift = (self.len - 1 - pos) as u32;
        ((code / (self.radix as u128).pow(shift)) % self.radix as u128) as u32
    }

    pub fn set(&self, code: u128, pos: usize, s: u32) -> u128 {
        let place = (self.radix as u128).pow((self.len - 1 - pos) as u32);
        let old = (code / place) % self.radix as u128;
        code - old * place + s as u128 * place
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_order() {
        let c = Codec::new(5, 3).unwrap();
        let v = [4, 0, 3];
        let code = c.encode(&v);
        assert_eq!(c.decode(code), v);
        assert_eq!(c.get(code, 2), 3);
        assert_eq!(c.decode(c.set(code, 1, 2)), vec![4, 2, 3]);
        assert!(c.encode(&[1, 4, 4]) < c.encode(&[2, 0, 0]));
        assert!(Codec::new(1 << 20, 7).is_err());
    }
}
