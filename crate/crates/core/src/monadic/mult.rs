//! Multiplication recovered from addition and divisibility on a truncation
//! of `(ℕ, +)`.
//!
//! Only the truncated addition and the divisibility relation are consulted:
//! `x ≤ y` iff `x = y` or `x + d = y` for some `d`; `lcm(a, b)` is the
//! `≤`-least common multiple; `x² = lcm(x, x+1) − x`; and
//! `x·y = ((x+y)² − x² − y²) / 2`, with subtraction and halving found by
//! searching for the summand.

use super::semigroup::{powers, Semigroup, TruncatedNat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultError {
    #[error("value {0} is outside the truncation")]
    OutOfRange(usize),
    #[error("truncation bound {bound} too small: needs at least {required}")]
    BoundExceeded { bound: usize, required: usize },
}

/// Tables for `+`, `≤` and `|` on `{1..N}`.
#[derive(Debug, Clone)]
pub struct PlusDivides {
    nat: TruncatedNat,
    sum: Vec<Option<u32>>,
    leq: Vec<bool>,
    div: Vec<bool>,
}

impl PlusDivides {
    /// Tables from the truncated semigroup `(ℕ, +)`, with `k | n` read as
    /// `n ∈ k^ℕ`.
    pub fn new(bound: usize) -> PlusDivides {
        let nat = TruncatedNat::new(bound);
        let mut div = vec![false; bound * bound];
        for x in 0..bound {
            for y in powers(&nat, x).0 {
                div[x * bound + y] = true;
            }
        }
        let add = |x: usize, y: usize| nat.op(x - 1, y - 1).map(|p| p + 1);
        PlusDivides::with_ops(bound, add, |k, n| div[(k - 1) * bound + n - 1])
    }

    /// Tables from arbitrary addition and divisibility oracles on values
    /// `1..=bound`; `add` returns `None` past the bound.
    pub fn with_ops(
        bound: usize,
        add: impl Fn(usize, usize) -> Option<usize>,
        divides: impl Fn(usize, usize) -> bool,
    ) -> PlusDivides {
        let nat = TruncatedNat::new(bound);
        let n = bound;
        let mut sum = vec![None; n * n];
        let mut leq = vec![false; n * n];
        let mut div = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            for y in 0..n {
                if let Some(z) = add(x + 1, y + 1).filter(|&z| (1..=n).contains(&z)) {
                    sum[x * n + y] = Some(z as u32 - 1);
                }
                div[x * n + y] = divides(x + 1, y + 1);
            }
        }
        for x in 0..n {
            for d in 0..n {
                if let Some(y) = sum[x * n + d] {
                    leq[x * n + y as usize] = true;
                }
            }
        }
        PlusDivides { nat, sum, leq, div }
    }

    pub fn bound(&self) -> usize {
        self.nat.bound
    }

    fn pos(&self, v: usize) -> Result<usize, MultError> {
        self.nat.pos(v).ok_or(MultError::OutOfRange(v))
    }

    pub fn leq(&self, x: usize, y: usize) -> Result<bool, MultError> {
        let (x, y) = (self.pos(x)?, self.pos(y)?);
        Ok(self.leq[x * self.bound() + y])
    }

    pub fn divides(&self, k: usize, n: usize) -> Result<bool, MultError> {
        let (k, n) = (self.pos(k)?, self.pos(n)?);
        Ok(self.div[k * self.bound() + n])
    }

    fn add(&self, x: usize, y: usize) -> Option<usize> {
        self.sum[x * self.bound() + y].map(|z| z as usize)
    }

    /// The `≤`-least element, i.e. 1.
    fn one(&self) -> usize {
        let n = self.bound();
        (0..n)
            .find(|&x| (0..n).all(|y| self.leq[x * n + y]))
            .expect("a truncation has a least element")
    }

    /// The `d` with `y + d = x`.
    fn sub(&self, x: usize, y: usize) -> Option<usize> {
        (0..self.bound()).find(|&d| self.add(y, d) == Some(x))
    }

    /// The `h` with `h + h = x`.
    fn half(&self, x: usize) -> Option<usize> {
        (0..self.bound()).find(|&h| self.add(h, h) == Some(x))
    }

    fn lcm_pos(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.bound();
        let mut best: Option<usize> = None;
        for m in 0..n {
            if self.div[a * n + m]
                && self.div[b * n + m]
                && best.is_none_or(|cur| self.leq[m * n + cur])
            {
                best = Some(m);
            }
        }
        best
    }

    /// Least common multiple within the truncation.
    pub fn lcm(&self, a: usize, b: usize) -> Result<Option<usize>, MultError> {
        let (a, b) = (self.pos(a)?, self.pos(b)?);
        Ok(self.lcm_pos(a, b).map(|p| self.nat.value(p)))
    }

    /// `x·y` through the pipeline above. The error names the smallest bound
    /// that fits every intermediate value, `(x+y)(x+y+1)`.
    pub fn multiply(&self, x: usize, y: usize) -> Result<usize, MultError> {
        self.multiply_traced(x, y).map(|(v, _)| v)
    }

    /// [`Self::multiply`] with one line per pipeline step.
    pub fn multiply_traced(&self, x: usize, y: usize) -> Result<(usize, Vec<String>), MultError> {
        let (px, py) = (self.pos(x)?, self.pos(y)?);
        let v = |p: usize| self.nat.value(p);
        let mut trace = Vec::new();
        let square = |p: usize, trace: &mut Vec<String>| -> Option<usize> {
            let next = self.add(p, self.one())?;
            let l = self.lcm_pos(p, next)?;
            let sq = self.sub(l, p)?;
            trace.push(format!(
                "lcm({}, {}) = {}, so {}^2 = {}",
                v(p),
                v(next),
                v(l),
                v(p),
                v(sq)
            ));
            Some(sq)
        };
        let mut run = || -> Option<usize> {
            let s = self.add(px, py)?;
            trace.push(format!("{x} + {y} = {}", v(s)));
            let s2 = square(s, &mut trace)?;
            let x2 = square(px, &mut trace)?;
            let y2 = square(py, &mut trace)?;
            let twice = self.sub(self.sub(s2, x2)?, y2)?;
            trace.push(format!("{} - {} - {} = {}", v(s2), v(x2), v(y2), v(twice)));
            let h = self.half(twice)?;
            trace.push(format!("{} = {} + {}", v(twice), v(h), v(h)));
            Some(h)
        };
        match run() {
            Some(p) => Ok((v(p), trace)),
            None => {
                let s = x + y;
                Err(MultError::BoundExceeded {
                    bound: self.bound(),
                    required: s * (s + 1),
                })
            }
        }
    }
}

/// Smallest bound that lets [`PlusDivides::multiply`] handle every pair with
/// product at most `max_product`.
pub fn bound_for_products(max_product: usize) -> usize {
    let s = max_product + 1;
    s * (s + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_examples() {
        let pd = PlusDivides::new(bound_for_products(20));
        assert_eq!(pd.multiply(4, 5), Ok(20));
        for y in 1..=10 {
            assert_eq!(pd.multiply(1, y), Ok(y));
        }
        assert_eq!(pd.lcm(4, 5), Ok(Some(20)));
    }

    #[test]
    fn small_bound_is_reported() {
        let pd = PlusDivides::new(30);
        assert_eq!(
            pd.multiply(4, 5),
            Err(MultError::BoundExceeded {
                bound: 30,
                required: 90
            })
        );
        assert_eq!(pd.multiply(31, 1), Err(MultError::OutOfRange(31)));
    }
}
