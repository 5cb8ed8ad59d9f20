//! All semigroups (hence equisingularity classes) with a prescribed Milnor number.
//!
//! A semigroup of length `h` with conductor `mu` arises from one of length `h-1`
//! with conductor `mu'` through `mu = mu' d + (r - 1)(d - 1)`: scale its generators
//! by `d` and append `r`. Both `d` and `r` are confined to explicit windows, so the
//! search is finite.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::bipoly::Rat;
use crate::numsg::SemigroupData;

/// Lengths `h >= 1` that can occur for Milnor number `m`: those with
/// `2^h <= (9 + sqrt(1 + 60 m)) / 10`, decided by comparing squares.
pub fn length_range(m: u64) -> Vec<usize> {
    let rhs = 1 + 60 * m as u128;
    (1..64usize)
        .take_while(|&h| {
            let lhs = 10u128 * (1u128 << h) - 9;
            lhs * lhs <= rhs
        })
        .collect()
}

/// `(5/3) 4^h - 3 * 2^h + 4/3`, the least conductor of a semigroup of length `h`.
pub fn least_conductor(h: usize) -> i128 {
    (5 * (1i128 << (2 * h)) + 4) / 3 - 3 * (1i128 << h)
}

/// The `r` window for one value of `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub d: i128,
    /// `mu/d + 3 * 2^(h-1) - 1`.
    pub b: Rat,
    /// `mu/(d-1) - p d/(d-1) + 1`.
    pub c: Rat,
    /// `ceil(b)`.
    pub lo: i128,
    /// `floor(c)`; the window is empty when `hi < lo`.
    pub hi: i128,
}

impl Window {
    pub fn len(&self) -> i128 {
        (self.hi - self.lo + 1).max(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Search bounds at level `h >= 2` for target `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBounds {
    pub h: usize,
    pub mu: i128,
    /// `(5/3) 4^(h-1) - 3 * 2^(h-1) + 4/3`.
    pub p: i128,
    /// `3 * 2^(h-1) - 2`.
    pub q: i128,
    /// Admissible `d`: all `d >= 2` with `(p+q) d^2 - q d - mu <= 0`.
    pub ds: Vec<i128>,
    pub windows: Vec<Window>,
    /// Least conductor of a semigroup of length `h`.
    pub b_lower: i128,
}

pub fn enum_bounds(mu: i128, h: usize) -> EnumBounds {
    assert!(h >= 2, "bounds are defined for h >= 2");
    let p = least_conductor(h - 1);
    let q = 3 * (1i128 << (h - 1)) - 2;
    let ds: Vec<i128> = (2..)
        .take_while(|&d| (p + q) * d * d - q * d - mu <= 0)
        .collect();
    let shift = 3 * (1i128 << (h - 1)) - 1;
    let windows = ds
        .iter()
        .map(|&d| {
            let b = Rat::new(BigInt::from(mu), BigInt::from(d)) + Rat::from_integer(shift.into());
            let c = Rat::new(BigInt::from(mu - p * d), BigInt::from(d - 1)) + Rat::one();
            Window {
                d,
                lo: Integer::div_ceil(&mu, &d) + shift,
                hi: Integer::div_floor(&(mu - p * d), &(d - 1)) + 1,
                b,
                c,
            }
        })
        .collect();
    EnumBounds {
        h,
        mu,
        p,
        q,
        ds,
        windows,
        b_lower: least_conductor(h),
    }
}

/// Counts from one `(mu, h)` node of the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStats {
    pub mu: i128,
    pub h: usize,
    /// Triples `(mu', r, d)` with `gcd(r, d) = 1` and `mu'` a nonnegative even integer.
    pub admissible: u64,
    /// `mu - (B_lower/2 - 1)`.
    pub bound: i128,
    /// `(d, admissible triples for d, window length)`.
    pub per_d: Vec<(i128, u64, i128)>,
}

type Memo = HashMap<(i128, usize), Vec<Vec<i128>>>;

struct Search {
    memo: Memo,
    stats: Vec<NodeStats>,
}

impl Search {
    fn level(&mut self, mu: i128, h: usize) -> Vec<Vec<i128>> {
        if let Some(v) = self.memo.get(&(mu, h)) {
            return v.clone();
        }
        let out = if h == 1 { coprime_pairs(mu) } else { self.extend(mu, h) };
        self.memo.insert((mu, h), out.clone());
        out
    }

    fn extend(&mut self, mu: i128, h: usize) -> Vec<Vec<i128>> {
        let bounds = enum_bounds(mu, h);
        let mut out = Vec::new();
        let mut node = NodeStats {
            mu,
            h,
            admissible: 0,
            bound: mu - (bounds.b_lower / 2 - 1),
            per_d: Vec::new(),
        };
        for w in &bounds.windows {
            let d = w.d;
            let mut count = 0;
            for r in w.lo..=w.hi {
                if r.gcd(&d) != 1 {
                    continue;
                }
                let num = mu - (d - 1) * (r - 1);
                if num < 0 || num % d != 0 || (num / d) % 2 != 0 {
                    continue;
                }
                count += 1;
                for child in self.level(num / d, h - 1) {
                    let mut gens: Vec<i128> = child.iter().map(|g| g * d).collect();
                    gens.push(r);
                    if has_conductor(&gens, mu) {
                        out.push(gens);
                    }
                }
            }
            node.admissible += count;
            node.per_d.push((d, count, w.len()));
        }
        self.stats.push(node);
        out
    }
}

/// Pairs `a < b`, coprime, with `(a-1)(b-1) = mu`.
fn coprime_pairs(mu: i128) -> Vec<Vec<i128>> {
    let mut out = Vec::new();
    let mut u = 1;
    while u * u < mu {
        if mu % u == 0 {
            let (a, b) = (u + 1, mu / u + 1);
            if a.gcd(&b) == 1 {
                out.push(vec![a, b]);
            }
        }
        u += 1;
    }
    out
}

fn has_conductor(gens: &[i128], mu: i128) -> bool {
    SemigroupData::new(gens.iter().map(|&g| BigInt::from(g)))
        .ok()
        .and_then(|s| s.conductor().cloned())
        == Some(BigInt::from(mu))
}

fn to_data(mut found: Vec<Vec<i128>>) -> Vec<SemigroupData> {
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|g| SemigroupData::new(g.into_iter().map(BigInt::from)).expect("validated"))
        .collect()
}

/// Every semigroup with conductor `m`, sorted lexicographically by generators.
/// Odd and zero `m` give the empty list.
pub fn enumerate_semigroups(m: u64) -> Vec<SemigroupData> {
    enumerate_with_stats(m).0
}

/// As [`enumerate_semigroups`], also returning the counts of every search node.
pub fn enumerate_with_stats(m: u64) -> (Vec<SemigroupData>, Vec<NodeStats>) {
    let mut search = Search {
        memo: Memo::new(),
        stats: Vec::new(),
    };
    if m == 0 || m % 2 == 1 {
        return (Vec::new(), Vec::new());
    }
    let mut found = Vec::new();
    for h in length_range(m) {
        found.extend(search.level(m as i128, h));
    }
    (to_data(found), search.stats)
}

/// The semigroups attaining the least conductor for each length:
/// `r_0 = 2^h`, `r_k = 2^(h-k) (5 * 2^(2k-1) - 1) / 3`.
pub fn sharp_family(h: usize) -> SemigroupData {
    assert!(h >= 1);
    let two = BigInt::from(2);
    let mut gens = vec![num_traits::pow(two.clone(), h)];
    for k in 1..=h {
        let top: BigInt = BigInt::from(5) * num_traits::pow(two.clone(), 2 * k - 1) - 1u32;
        gens.push(num_traits::pow(two.clone(), h - k) * (top / 3u32));
    }
    SemigroupData::new(gens).expect("sharp family is valid")
}

/// Exhaustive search over increasing sequences bounded by `r_cap`, used as an
/// independent check of [`enumerate_semigroups`]. Only prefixes whose gcd keeps
/// dropping and whose partial conductor stays within `m` are extended.
pub fn brute_force_enumerate(m: u64, r_cap: u64) -> Vec<SemigroupData> {
    if m == 0 || m % 2 == 1 {
        return Vec::new();
    }
    let (m, cap) = (m as i128, r_cap as i128);
    let mut found = Vec::new();
    for r0 in 2..=cap {
        let mut seq = vec![r0];
        dfs(&mut seq, r0, 1 - r0, m, cap, &mut found);
    }
    to_data(found)
}

/// `partial` is `sum (e_i - 1) r_i - r_0 + 1` over the chosen generators.
fn dfs(seq: &mut Vec<i128>, g: i128, partial: i128, m: i128, cap: i128, out: &mut Vec<Vec<i128>>) {
    let last = *seq.last().unwrap();
    for r in last + 1..=cap {
        let next = g.gcd(&r);
        if next == g {
            continue;
        }
        let c = partial + (g / next - 1) * r;
        if next == 1 {
            if c == m && has_conductor(seq.iter().chain([&r]).copied().collect::<Vec<_>>().as_slice(), m) {
                let mut v = seq.clone();
                v.push(r);
                out.push(v);
            }
            continue;
        }
        // at least one more generator above r, contributing more than r
        if c + r + 1 > m {
            continue;
        }
        seq.push(r);
        dfs(seq, next, c, m, cap, out);
        seq.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(v: &[SemigroupData]) -> Vec<Vec<String>> {
        v.iter()
            .map(|s| s.r().iter().map(ToString::to_string).collect())
            .collect()
    }

    fn lists(v: &[&[i64]]) -> Vec<Vec<String>> {
        v.iter().map(|g| g.iter().map(ToString::to_string).collect()).collect()
    }

    #[test]
    fn lengths() {
        assert_eq!(length_range(28), vec![1, 2]);
        assert_eq!(length_range(2), vec![1]);
        assert_eq!(length_range(16), vec![1, 2]);
        assert_eq!(length_range(15), vec![1]);
        assert!(length_range(0).is_empty());
    }

    #[test]
    fn bounds() {
        let b = enum_bounds(28, 2);
        assert_eq!(b.ds, vec![2]);
        assert_eq!((b.windows[0].lo, b.windows[0].hi), (19, 25));
        assert_eq!(b.windows[0].b, Rat::from_integer(19.into()));
        let b = enum_bounds(16, 2);
        assert_eq!((b.windows[0].lo, b.windows[0].hi), (13, 13));
        assert!(enum_bounds(14, 2).ds.is_empty());
        assert_eq!(least_conductor(2), 16);
        assert_eq!(least_conductor(3), 84);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            gens(&enumerate_semigroups(28)),
            lists(&[&[2, 29], &[4, 6, 25], &[4, 10, 21], &[5, 8]])
        );
        assert_eq!(gens(&enumerate_semigroups(2)), lists(&[&[2, 3]]));
        assert_eq!(gens(&enumerate_semigroups(16)), lists(&[&[2, 17], &[4, 6, 13]]));
        assert!(enumerate_semigroups(7).is_empty());
        assert!(enumerate_semigroups(0).is_empty());
    }

    #[test]
    fn sharp() {
        assert_eq!(gens(&[sharp_family(1)]), lists(&[&[2, 3]]));
        assert_eq!(gens(&[sharp_family(2)]), lists(&[&[4, 6, 13]]));
        assert_eq!(gens(&[sharp_family(3)]), lists(&[&[8, 12, 26, 53]]));
        assert_eq!(sharp_family(3).conductor(), Some(&BigInt::from(84)));
    }

    #[test]
    fn brute_force_agrees() {
        assert_eq!(gens(&brute_force_enumerate(28, 29)), gens(&enumerate_semigroups(28)));
        assert_eq!(gens(&brute_force_enumerate(2, 3)), lists(&[&[2, 3]]));
        assert!(brute_force_enumerate(5, 10).is_empty());
    }
}
