//! Packed exponent vectors: eight signed 8-bit slots in a `u64`.
//!
//! Slot 0 sits in the most significant byte so that the integer order is the
//! lexicographic order on exponent vectors.

pub const NVARS: usize = 8;
const BIAS: u64 = 0x8080_8080_8080_8080;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(u64);

impl std::fmt::Debug for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

impl Default for Mono {
    fn default() -> Self {
        Mono::ONE
    }
}

#[inline]
fn shift(i: usize) -> u32 {
    (8 * (NVARS - 1 - i)) as u32
}

impl Mono {
    pub const ONE: Mono = Mono(BIAS);

    pub fn var(i: usize) -> Mono {
        Mono::ONE.with(i, 1)
    }

    pub fn from_exps(e: &[i32]) -> Mono {
        assert!(e.len() <= NVARS, "at most {NVARS} variables");
        let mut m = Mono::ONE;
        for (i, &x) in e.iter().enumerate() {
            m = m.with(i, x);
        }
        m
    }

    #[inline]
    pub fn get(self, i: usize) -> i32 {
        (((self.0 >> shift(i)) & 0xff) as i32) - 128
    }

    #[inline]
    pub fn with(self, i: usize, e: i32) -> Mono {
        assert!((-128..=127).contains(&e), "exponent {e} out of range");
        let s = shift(i);
        let cleared = self.0 & !(0xffu64 << s);
        Mono(cleared | (((e + 128) as u64) << s))
    }

    pub fn exps(self) -> [i32; NVARS] {
        let mut out = [0; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.get(i);
        }
        out
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == BIAS
    }

    /// Product of monomials (sum of exponent vectors).
    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        let r = Mono(self.0.wrapping_add(other.0).wrapping_sub(BIAS));
        if !r.check_sum(self, other, 1) {
            panic!("monomial exponent overflow: {:?} * {:?}", self, other);
        }
        r
    }

    /// Quotient of monomials (difference of exponent vectors).
    #[inline]
    pub fn div(self, other: Mono) -> Mono {
        let r = Mono(self.0.wrapping_sub(other.0).wrapping_add(BIAS));
        if !r.check_sum(self, other, -1) {
            panic!("monomial exponent overflow: {:?} / {:?}", self, other);
        }
        r
    }

    #[inline]
    fn check_sum(self, a: Mono, b: Mono, sign: i32) -> bool {
        (0..NVARS).all(|i| self.get(i) == a.get(i) + sign * b.get(i))
    }

    pub fn total(self) -> i32 {
        (0..NVARS).map(|i| self.get(i)).sum()
    }

    /// Degree in the variables selected by `mask` (bit i selects slot i).
    pub fn degree_in(self, mask: u32) -> i32 {
        (0..NVARS).filter(|i| mask & (1 << i) != 0).map(|i| self.get(i)).sum()
    }

    /// Swap two slots.
    pub fn swap(self, i: usize, j: usize) -> Mono {
        let (a, b) = (self.get(i), self.get(j));
        self.with(i, b).with(j, a)
    }

    pub fn is_nonneg(self) -> bool {
        (0..NVARS).all(|i| self.get(i) >= 0)
    }

    /// True if every exponent of `self` is at least the matching exponent of `other`.
    pub fn divisible_by(self, other: Mono) -> bool {
        (0..NVARS).all(|i| self.get(i) >= other.get(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_roundtrip() {
        let m = Mono::from_exps(&[3, -2, 0, 7]);
        assert_eq!(m.get(0), 3);
        assert_eq!(m.get(1), -2);
        assert_eq!(m.get(3), 7);
        assert_eq!(m.total(), 8);
    }

    #[test]
    fn mul_div() {
        let a = Mono::from_exps(&[1, -3, 2]);
        let b = Mono::from_exps(&[4, 1, -2]);
        assert_eq!(a.mul(b), Mono::from_exps(&[5, -2, 0]));
        assert_eq!(a.mul(b).div(b), a);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let a = Mono::from_exps(&[1, 5]);
        let b = Mono::from_exps(&[2, 0]);
        let c = Mono::from_exps(&[-1, 9]);
        assert!(a < b && c < a);
    }

    #[test]
    #[should_panic]
    fn overflow_detected() {
        let a = Mono::from_exps(&[100]);
        let _ = a.mul(a);
    }
}
