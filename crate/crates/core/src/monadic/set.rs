use std::fmt;

/// Finite subset of a base universe of at most 128 elements, as a bitmask
/// over element positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetMask(pub u128);

pub const MAX_BASE: usize = 128;

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    pub fn singleton(i: usize) -> SetMask {
        SetMask(1u128 << i)
    }

    pub fn full(n: usize) -> SetMask {
        if n >= 128 {
            SetMask(u128::MAX)
        } else {
            SetMask((1u128 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> SetMask {
        SetMask(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> SetMask {
        SetMask(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: SetMask) -> SetMask {
        SetMask(self.0 | o.0)
    }

    pub fn inter(self, o: SetMask) -> SetMask {
        SetMask(self.0 & o.0)
    }

    pub fn minus(self, o: SetMask) -> SetMask {
        SetMask(self.0 & !o.0)
    }

    pub fn is_subset(self, o: SetMask) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: SetMask) -> bool {
        self.0 & o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `{0..n}` with at most `cap` elements, by size then
    /// lexicographically.
    pub fn all_up_to(n: usize, cap: usize) -> Vec<SetMask> {
        assert!(n <= MAX_BASE);
        let mut out = Vec::new();
        for k in 0..=cap.min(n) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                out.push(idx.iter().fold(SetMask::EMPTY, |m, &i| m.with(i)));
                let mut j = k;
                while j > 0 && idx[j - 1] == n - k + j - 1 {
                    j -= 1;
                }
                if j == 0 {
                    break;
                }
                idx[j - 1] += 1;
                for l in j..k {
                    idx[l] = idx[l - 1] + 1;
                }
            }
        }
        out
    }
}

impl FromIterator<usize> for SetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(SetMask::EMPTY, |m, i| m.with(i))
    }
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn enumeration_counts() {
        for n in 0..=9 {
            for cap in 0..=n {
                let all = SetMask::all_up_to(n, cap);
                let want: usize = (0..=cap).map(|k| binom(n, k)).sum();
                assert_eq!(all.len(), want, "n={n} cap={cap}");
                let mut dedup = all.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
                assert!(all
                    .iter()
                    .all(|s| s.len() <= cap && s.is_subset(SetMask::full(n))));
            }
        }
    }

    #[test]
    fn set_ops() {
        let a: SetMask = [1, 2, 5].into_iter().collect();
        let b: SetMask = [2, 7].into_iter().collect();
        assert_eq!(a.union(b).iter().collect::<Vec<_>>(), vec![1, 2, 5, 7]);
        assert_eq!(a.inter(b).iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(a.minus(b).len(), 2);
        assert!(!a.is_disjoint(b));
        assert!(SetMask::singleton(2).is_subset(a));
    }
}
