use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `t` with `exp(t)` finite in `f64`.
const EXP_LIMIT: f64 = 709.78;

/// A positive number `exp^height(top)`, normalized so that `height > 0`
/// implies `top > EXP_LIMIT`. Normalized towers compare lexicographically.
///
/// Additions of a much smaller term at height two or more are dropped, so
/// values that high are lower bounds accurate to the precision of `top`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tower {
    pub height: u32,
    pub top: f64,
}

impl Tower {
    pub fn new(x: f64) -> Self {
        assert!(x.is_finite() && x >= 0.0, "tower values are finite and nonnegative");
        Tower { height: 0, top: x }
    }

    fn normalized(mut self) -> Self {
        while self.height > 0 && self.top <= EXP_LIMIT {
            self.top = self.top.exp();
            self.height -= 1;
        }
        self
    }

    /// `Some(x)` when the value fits in an `f64`.
    pub fn value(&self) -> Option<f64> {
        (self.height == 0).then_some(self.top)
    }

    /// `exp(self)`.
    pub fn exp(self) -> Self {
        Tower {
            height: self.height + 1,
            top: self.top,
        }
        .normalized()
    }

    /// `self + c` for a constant `c >= 0`; `exact` is false when dropped.
    fn add_const(self, c: f64) -> (Self, bool) {
        match self.height {
            0 => (Tower::new(self.top + c), true),
            // exp(t) + c = exp(t + ln(1 + c e^{-t}))
            1 => (
                Tower {
                    height: 1,
                    top: self.top + (c * (-self.top).exp()).ln_1p(),
                },
                true,
            ),
            _ => (self, c == 0.0),
        }
    }

    /// `c * self` for a constant `c > 0`.
    fn scale(self, c: f64) -> (Self, bool) {
        match self.height {
            0 => {
                let v = self.top * c;
                if v.is_finite() {
                    (Tower::new(v), true)
                } else {
                    (Tower { height: 1, top: self.top.ln() + c.ln() }, true)
                }
            }
            h => {
                // c exp(y) = exp(y + ln c)
                let inner = Tower {
                    height: h - 1,
                    top: self.top,
                };
                let (y, exact) = inner.add_const(c.ln());
                (y.exp(), exact)
            }
        }
    }

    /// `self + other`.
    fn add(self, other: Tower) -> (Self, bool) {
        let (big, small) = if self >= other { (self, other) } else { (other, self) };
        match (big.height, small.height) {
            (0, _) => {
                let v = big.top + small.top;
                if v.is_finite() {
                    (Tower::new(v), true)
                } else {
                    (Tower { height: 1, top: v.ln() }, false)
                }
            }
            (1, 0) => big.add_const(small.top),
            (1, 1) => (
                Tower {
                    height: 1,
                    top: big.top + (small.top - big.top).exp().ln_1p(),
                },
                true,
            ),
            _ => (big, false),
        }
    }
}

impl PartialOrd for Tower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.height.cmp(&other.height) {
            Ordering::Equal => self.top.partial_cmp(&other.top),
            o => Some(o),
        }
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = format!("{:.6e}", self.top);
        for _ in 0..self.height {
            s = format!("exp({s})");
        }
        f.write_str(&s)
    }
}

/// The constants `b_{n,i}`, `c_n`, `d_n` of the rank-two existence bound,
/// stored as `-ln b`, `-ln c` and `ln d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankTwoBounds {
    pub n: u32,
    pub neg_ln_b: Vec<Tower>,
    pub neg_ln_c: Tower,
    pub ln_d: Tower,
    /// False when some term was too small to register next to a tower of
    /// height two or more.
    pub exact: bool,
}

impl RankTwoBounds {
    /// `b_{n,i}` as an `f64`; zero once it underflows.
    pub fn b(&self, i: usize) -> f64 {
        self.neg_ln_b[i].value().map_or(0.0, |l| (-l).exp())
    }

    pub fn c(&self) -> f64 {
        self.neg_ln_c.value().map_or(0.0, |l| (-l).exp())
    }
}

/// `b_{n,0} = 1`, `b_{n,i+1} = b_{n,i} exp(-90 b_{n,i}^{-(n+1)}) / 2`,
/// `c_n = b_{n,n} exp(-30(2n+1) b_{n,n}^{-(n+1)}) / 2`, and `d_n` the least
/// `x` past which `b_{n,n} x > (5 ln(2 x^{3n+3/4}) exp(30(2n+1) b_{n,n}^{-(n+1)}))^4`
/// holds for good.
pub fn rank_two_bounds(n: u32) -> Result<RankTwoBounds> {
    if n == 0 {
        return Err(Error::precondition("rank_two_bounds needs n >= 1"));
    }
    let m = (n + 1) as f64;
    let ln2 = std::f64::consts::LN_2;
    let exact = std::cell::Cell::new(true);
    let track = |(t, e): (Tower, bool)| {
        exact.set(exact.get() && e);
        t
    };

    // L = -ln b; L' = L + ln 2 + 90 exp((n+1) L)
    let mut neg_ln_b = vec![Tower::new(0.0)];
    for _ in 0..n {
        let l = *neg_ln_b.last().unwrap();
        let e = track(l.scale(m)).exp();
        let e = track(e.scale(90.0));
        let next = track(track(l.add_const(ln2)).add(e));
        neg_ln_b.push(next);
    }
    let l = *neg_ln_b.last().unwrap();
    for w in neg_ln_b.windows(2) {
        assert!(w[1] > w[0], "b_(n,i) must decrease strictly");
    }

    let k = 30.0 * (2 * n + 1) as f64;
    let e = track(l.scale(m)).exp();
    let neg_ln_c = track(track(l.add_const(ln2)).add(track(e.scale(k))));
    assert!(neg_ln_c > l, "c_n must lie below b_(n,n)");

    // with y = ln x: y - 4 ln(ln 2 + a y) > Q, Q = L + 4 ln 5 + 4 k exp((n+1) L)
    let a = 3.0 * n as f64 + 0.75;
    let q = track(track(l.add_const(4.0 * 5f64.ln())).add(track(e.scale(4.0 * k))));
    let ln_d = match q.value() {
        Some(q) => {
            let g = |y: f64| y - 4.0 * (ln2 + a * y).ln();
            // g increases for y > 4 - ln 2 / a
            let mut lo = 4.0;
            let mut hi = (2.0 * q).max(8.0);
            while g(hi) <= q {
                hi *= 2.0;
            }
            if g(lo) > q {
                hi = lo;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if g(mid) > q {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Tower::new(hi)
        }
        None => {
            // the logarithmic correction is below the precision of Q
            exact.set(false);
            q
        }
    };

    Ok(RankTwoBounds {
        n,
        neg_ln_b,
        neg_ln_c,
        ln_d,
        exact: exact.get(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_of_the_schedule() {
        let b = rank_two_bounds(1).unwrap();
        assert_eq!(b.b(0), 1.0);
        // b_{1,1} = e^{-90} / 2, computed directly
        let direct = (-90f64).exp() / 2.0;
        assert!((b.b(1) - direct).abs() <= 1e-12 * direct);
        // c_1 underflows f64; compare logarithms
        assert!(b.neg_ln_c > b.neg_ln_b[1] && b.neg_ln_c.value().is_some());
    }

    #[test]
    fn schedule_decreases_for_several_n() {
        for n in 1..=5 {
            let b = rank_two_bounds(n).unwrap();
            assert_eq!(b.neg_ln_b.len(), n as usize + 1);
            assert_eq!(b.neg_ln_b[0], Tower::new(0.0));
            assert!(b.neg_ln_b.windows(2).all(|w| w[1] > w[0]));
            assert!(b.neg_ln_c > b.neg_ln_b[n as usize]);
            assert!(b.ln_d > b.neg_ln_b[n as usize]);
        }
        assert!(matches!(rank_two_bounds(0), Err(Error::Precondition(_))));
    }

    #[test]
    fn d_threshold_satisfies_the_inequality_for_n_one() {
        let b = rank_two_bounds(1).unwrap();
        let y = b.ln_d.value().unwrap();
        let l = b.neg_ln_b[1].value().unwrap();
        let k = 90.0;
        let lhs = |y: f64| -l + y;
        let rhs = |y: f64| 4.0 * (5f64.ln() + (2f64.ln() + 3.75 * y).ln() + k * (2.0 * l).exp());
        // at this scale the log term is below f64 resolution, so compare with slack
        assert!(lhs(y * 1.000001) > rhs(y * 1.000001));
        assert!(lhs(y * 0.999999) < rhs(y * 0.999999));
    }

    #[test]
    fn tower_arithmetic() {
        let t = Tower::new(800.0).exp();
        assert_eq!(t.height, 1);
        assert_eq!(Tower::new(3.0).exp(), Tower::new(3f64.exp()));
        let (s, exact) = t.scale(2.0);
        assert!(exact);
        assert!((s.top - (800.0 + 2f64.ln())).abs() < 1e-9);
        assert!(t > Tower::new(f64::MAX));
    }
}
