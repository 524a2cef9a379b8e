use super::rational::Rational;
use num_traits::{One, Zero};

/// Commutative ring with unit, as used by the generic Pfaffian and determinant.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn rzero() -> Self;
    fn rone() -> Self;
    fn from_rat(r: &Rational) -> Self;
    fn ris_zero(&self) -> bool;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn rscale(&self, r: &Rational) -> Self {
        self.rmul(&Self::from_rat(r))
    }
}

impl Ring for Rational {
    fn rzero() -> Self {
        Zero::zero()
    }
    fn rone() -> Self {
        One::one()
    }
    fn from_rat(r: &Rational) -> Self {
        r.clone()
    }
    fn ris_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn rscale(&self, r: &Rational) -> Self {
        self * r
    }
}
