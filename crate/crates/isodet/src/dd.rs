//! Minimal double-double arithmetic for cancellation-prone Bessel series.
//!
//! A value is an unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2, giving
//! ~31 significant digits. Only the operations the series kernels need are
//! implemented; everything assumes finite, normal inputs.

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two doubles (Knuth two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via FMA.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[allow(dead_code)]
pub(crate) const DD_PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
pub(crate) const DD_LN2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
/// Euler–Mascheroni constant.
pub(crate) const DD_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };

impl Dd {
    #[inline]
    #[allow(dead_code)]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn zero() -> Self {
        Dd { hi: 0.0, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s, e) = two_sum(self.hi, b);
        let e = e + self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r2 = r.sub(o.mul_f64(q2));
        let q3 = r2.hi / o.hi;
        Dd::from_f64(q1).add_f64(q2).add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        self.div(Dd::from_f64(b))
    }

    /// Multiply by 2^k (exact while in range).
    #[inline]
    pub fn ldexp(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    /// e^self, |self.hi| up to ~700.
    pub fn exp(self) -> Dd {
        let k = (self.hi / DD_LN2.hi).round();
        let r = self.sub(DD_LN2.mul_f64(k));
        // Taylor on |r| <= ln2/2; terms fall below 1e-33 well before i = 28.
        let mut sum = Dd::from_f64(1.0).add(r);
        let mut term = r;
        for i in 2..28 {
            term = term.mul(r).div_f64(i as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-33 * sum.hi.abs() {
                break;
            }
        }
        sum.ldexp(k as i32)
    }

    /// Natural log for positive values: one Newton step on top of the f64 log
    /// doubles the precision.
    pub fn ln(self) -> Dd {
        let y0 = self.hi.ln();
        let r = self.mul(Dd::from_f64(-y0).exp());
        Dd::from_f64(y0).add(r.add_f64(-1.0))
    }
}
