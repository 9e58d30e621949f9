//! Double-double ("compensated") arithmetic: an unevaluated sum of two f64
//! carrying ~31 significant digits. Used where a straight f64 sum would lose
//! the result to cancellation (alternating Bessel and ₁F₁ series at large
//! argument). Algorithms are the classical error-free transformations of
//! Dekker and Knuth; products use a Dekker split so no FMA is required.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

/// Dekker split: exact product of two f64 as hi + lo.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    const SPLIT: f64 = 134217729.0; // 2^27 + 1
    let p = a * b;
    let (a_hi, a_lo) = {
        let t = SPLIT * a;
        let hi = t - (t - a);
        (hi, a - hi)
    };
    let (b_hi, b_lo) = {
        let t = SPLIT * b;
        let hi = t - (t - b);
        (hi, b - hi)
    };
    let err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo;
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two f64 as a Dd.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    /// Exact product of two f64 as a Dd.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let s2 = s2 + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, other);
        let p2 = p2 + self.lo * other;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    /// Quotient by Newton refinement; good to ~2 ulp of double-double.
    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };

    #[inline]
    pub fn new(re: Dd, im: Dd) -> Cdd {
        Cdd { re, im }
    }

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Cdd {
        Cdd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    #[inline]
    pub fn add(self, other: Cdd) -> Cdd {
        Cdd { re: self.re.add(other.re), im: self.im.add(other.im) }
    }

    #[inline]
    pub fn mul(self, other: Cdd) -> Cdd {
        let re = self.re.mul(other.re).sub(self.im.mul(other.im));
        let im = self.re.mul(other.im).add(self.im.mul(other.re));
        Cdd { re, im }
    }

    /// Divide by a complex dd via the conjugate.
    #[inline]
    pub fn div(self, other: Cdd) -> Cdd {
        let denom = other.re.mul(other.re).add(other.im.mul(other.im));
        let re = self.re.mul(other.re).add(self.im.mul(other.im));
        let im = self.im.mul(other.re).sub(self.re.mul(other.im));
        Cdd { re: re.div(denom), im: im.div(denom) }
    }

    /// Approximate magnitude (f64 precision is enough for termination tests).
    #[inline]
    pub fn mag(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}
