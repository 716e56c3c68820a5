use std::fmt;

use super::{QTScalar, Q, DEN};
use crate::Result;

/// Quotient of two [`QTScalar`] values, compared by cross multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: QTScalar,
    pub den: QTScalar,
}

impl RatFunc {
    pub fn new(num: QTScalar, den: QTScalar) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Self { num, den };
        r.simplify();
        r
    }

    pub fn from_scalar(s: QTScalar) -> Self {
        Self { num: s, den: QTScalar::one() }
    }

    pub fn zero() -> Self {
        Self::from_scalar(QTScalar::zero())
    }

    pub fn one() -> Self {
        Self::from_scalar(QTScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn simplify(&mut self) {
        if self.num.is_zero() {
            self.den = QTScalar::one();
            return;
        }
        if let Ok(q) = self.num.exact_div(&self.den) {
            self.num = q;
            self.den = QTScalar::one();
        } else if self.den.len() == 1 {
            let d = self.den.clone();
            self.num = self.num.exact_div(&d).expect("monomial division");
            self.den = QTScalar::one();
        }
    }

    /// Cancel common factors of the form `1 - q^a t^b` (small `a`, `b`).
    pub fn reduce(&self) -> RatFunc {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if num.is_zero() {
            return RatFunc::zero();
        }
        for a in 0..=8i64 {
            for b in -16..=16i64 {
                if (a, b) <= (0, 0) {
                    continue;
                }
                let mut f = QTScalar::one();
                f.add_scaled_shifted(&QTScalar::one(), &-Q::from_integer(1), a * DEN, b * DEN);
                while den.len() > 1 {
                    match (num.exact_div(&f), den.exact_div(&f)) {
                        (Ok(n2), Ok(d2)) => {
                            num = n2;
                            den = d2;
                        }
                        _ => break,
                    }
                }
            }
        }
        RatFunc::new(num, den)
    }

    /// Substitute `q -> 1` after cancelling binomial factors.
    pub fn at_q_one(&self) -> RatFunc {
        let r = self.reduce();
        RatFunc::new(r.num.at_q_one(), r.den.at_q_one())
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    /// The polynomial value when the denominator divides the numerator.
    pub fn to_scalar(&self) -> Result<QTScalar> {
        self.num.exact_div(&self.den)
    }

    pub fn equals(&self, o: &RatFunc) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
