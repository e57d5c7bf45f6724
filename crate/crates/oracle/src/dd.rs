//! Double-double arithmetic: an unevaluated sum `hi + lo` of two f64 giving
//! roughly 31 significant decimal digits. Only the operations the reference
//! evaluators need are implemented.
//!
//! The error-free transforms follow Dekker and Knuth; `two_prod` relies on
//! fused multiply-add, which rustc lowers to the hardware instruction.

#[derive(Clone, Copy, Debug, PartialEq)]
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
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

pub const DD_PI: Dd = Dd {
    hi: 3.141592653589793116e0,
    lo: 1.224646799147353207e-16,
};
pub const DD_LN2: Dd = Dd {
    hi: 6.931471805599452862e-1,
    lo: 2.319046813846299558e-17,
};
/// Euler-Mascheroni constant.
pub const DD_EULER: Dd = Dd {
    hi: 5.772156649015328655e-1,
    lo: -4.942915152430649168e-18,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        let p2 = p2 + self.lo * x;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        self.div(Dd::from_f64(x))
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        self.add(Dd::from_f64(x))
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        assert!(self.hi > 0.0, "dd sqrt of negative value");
        let s = self.hi.sqrt();
        let sd = Dd::from_f64(s);
        // one Newton correction doubles the working precision
        let e = self.sub(sd.mul(sd));
        sd.add(e.div(sd.mul_f64(2.0)))
    }

    /// Scale by 2^k exactly.
    pub fn ldexp(self, k: i32) -> Dd {
        let f = (2.0f64).powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -709.0 {
            return Dd::ZERO;
        }
        let m = (self.hi / DD_LN2.hi).round();
        let r = self.sub(DD_LN2.mul_f64(m));
        // |r| <= ln2/2; Taylor series
        let mut sum = Dd::ONE.add(r);
        let mut term = r;
        for k in 2..40 {
            term = term.mul(r).div_f64(k as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        sum.ldexp(m as i32)
    }

    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "dd ln of non-positive value");
        let mut y = Dd::from_f64(self.hi.ln());
        // Newton: y <- y + x*exp(-y) - 1, two rounds
        for _ in 0..2 {
            y = y.add(self.mul(y.neg().exp())).add_f64(-1.0);
        }
        y
    }

    /// self^p for self > 0.
    pub fn powf(self, p: Dd) -> Dd {
        p.mul(self.ln()).exp()
    }

    pub fn powi(self, n: u32) -> Dd {
        let mut base = self;
        let mut n = n;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }

    pub fn cosh(self) -> Dd {
        let e = self.exp();
        e.add(Dd::ONE.div(e)).ldexp(-1)
    }

    pub fn sinh(self) -> Dd {
        if self.hi.abs() < 0.1 {
            // series to avoid cancellation near zero
            let x2 = self.mul(self);
            let mut term = self;
            let mut sum = self;
            for k in 1..20 {
                let den = ((2 * k) * (2 * k + 1)) as f64;
                term = term.mul(x2).div_f64(den);
                sum = sum.add(term);
                if term.hi.abs() < 1e-35 * sum.hi.abs() {
                    break;
                }
            }
            sum
        } else {
            let e = self.exp();
            e.sub(Dd::ONE.div(e)).ldexp(-1)
        }
    }
}

fn sin_pi_quarter(s: Dd) -> Dd {
    // sin(pi*s) for |s| <= 1/4 by Taylor series
    let x = DD_PI.mul(s);
    let x2 = x.mul(x);
    let mut term = x;
    let mut sum = x;
    for k in 1..25 {
        let den = ((2 * k) * (2 * k + 1)) as f64;
        term = term.mul(x2).div_f64(-den);
        sum = sum.add(term);
        if term.hi.abs() < 1e-36 * (sum.hi.abs() + 1e-300) {
            break;
        }
    }
    sum
}

fn cos_pi_quarter(s: Dd) -> Dd {
    let x = DD_PI.mul(s);
    let x2 = x.mul(x);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 1..25 {
        let den = ((2 * k - 1) * (2 * k)) as f64;
        term = term.mul(x2).div_f64(-den);
        sum = sum.add(term);
        if term.hi.abs() < 1e-36 * sum.hi.abs() {
            break;
        }
    }
    sum
}

/// sin(pi x), exact at (half-)integers.
pub fn sin_pi(x: f64) -> Dd {
    sin_pi_dd(Dd::from_f64(x))
}

/// sin(pi x) with a dd argument (the low word shifts the reduced phase).
pub fn sin_pi_dd(x: Dd) -> Dd {
    let t = x.hi.rem_euclid(2.0); // exact for f64
    let k = (2.0 * t).round();
    // t - k/2 is exact (operands within a factor of two or trivially exact)
    let s = Dd::from_f64(t - k / 2.0).add(Dd::from_f64(x.lo));
    match (k as i64).rem_euclid(4) {
        0 => sin_pi_quarter(s),
        1 => cos_pi_quarter(s),
        2 => sin_pi_quarter(s).neg(),
        _ => cos_pi_quarter(s).neg(),
    }
}

/// cos(pi x).
pub fn cos_pi(x: f64) -> Dd {
    // reduce in place; x + 0.5 is not generally representable
    let t = x.rem_euclid(2.0);
    let k = (2.0 * t).round();
    let s = Dd::from_f64(t - k / 2.0);
    match (k as i64).rem_euclid(4) {
        0 => cos_pi_quarter(s),
        1 => sin_pi_quarter(s).neg(),
        2 => cos_pi_quarter(s).neg(),
        _ => sin_pi_quarter(s),
    }
}
