use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::Ring;

/// Isomorphism type of a finitely generated module as an elementary-divisor
/// chain `d1 | d2 | ... | 0 | 0`. Unit divisors are dropped and `0` marks a
/// free summand over `Z`. Over `Z/n` a free summand is recorded as `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbGroupShape {
    divisors: Vec<BigInt>,
}

impl AbGroupShape {
    pub fn trivial() -> AbGroupShape {
        AbGroupShape::default()
    }

    /// Builds the shape of `⊕ R/(d)` over the given diagonal entries, which
    /// need not be sorted or reduced.
    pub fn from_diagonal(ring: &Ring, entries: &[BigInt]) -> AbGroupShape {
        let mut torsion: Vec<BigInt> = Vec::new();
        let mut free = 0usize;
        for d in entries {
            let d = match ring {
                Ring::Integers => d.clone(),
                Ring::IntegersMod(n) => {
                    let g = ring.ideal_size(d);
                    if g.is_zero() {
                        n.clone()
                    } else {
                        g
                    }
                }
            };
            let d = num_traits::Signed::abs(&d);
            if d.is_zero() {
                free += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        AbGroupShape::from_torsion_and_rank(torsion, free)
    }

    /// Accepts arbitrary torsion orders and rebuilds the invariant-factor chain.
    pub fn from_torsion_and_rank(torsion: Vec<BigInt>, free_rank: usize) -> AbGroupShape {
        let mut chain = invariant_factors(torsion);
        chain.extend(std::iter::repeat(BigInt::zero()).take(free_rank));
        AbGroupShape { divisors: chain }
    }

    /// Takes a list that is already a valid chain; returns `None` otherwise.
    pub fn from_divisors(divisors: Vec<BigInt>) -> Option<AbGroupShape> {
        let free = divisors.iter().filter(|d| d.is_zero()).count();
        let torsion: Vec<BigInt> = divisors.iter().filter(|d| !d.is_zero()).cloned().collect();
        let candidate = AbGroupShape::from_torsion_and_rank(torsion, free);
        (candidate.divisors == divisors).then_some(candidate)
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn free_rank(&self) -> usize {
        self.divisors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.divisors.iter().filter(|d| !d.is_zero())
    }

    /// Prime-power parts of the torsion divisors, in ascending order.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for d in self.torsion() {
            out.extend(prime_power_parts(d));
        }
        out.sort();
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Group order, or `None` when there is a free summand.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.divisors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    pub fn exponent(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.divisors.last().cloned().unwrap_or_else(BigInt::one))
    }
}

/// Rebuilds `d1 | d2 | ...` from arbitrary cyclic orders by a pairwise
/// gcd/lcm sweep: after row `i` is processed, `orders[i]` divides every later entry.
fn invariant_factors(mut orders: Vec<BigInt>) -> Vec<BigInt> {
    orders.retain(|d| !d.is_one() && !d.is_zero());
    let n = orders.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let g = orders[i].gcd(&orders[j]);
            let l = orders[i].lcm(&orders[j]);
            orders[i] = g;
            orders[j] = l;
        }
    }
    orders.retain(|d| !d.is_one());
    orders
}

fn prime_power_parts(d: &BigInt) -> Vec<BigInt> {
    let mut rest = d.clone();
    let mut parts = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut q = BigInt::one();
        while rest.is_multiple_of(&p) {
            rest /= &p;
            q *= &p;
        }
        if !q.is_one() {
            parts.push(q);
        }
        p += 1;
    }
    if rest > BigInt::one() {
        parts.push(rest);
    }
    parts
}

impl fmt::Display for AbGroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in self.torsion() {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn chain_from_coprime_orders() {
        let s = AbGroupShape::from_torsion_and_rank(b(&[2, 3]), 0);
        assert_eq!(s.divisors(), &b(&[6])[..]);
        let s = AbGroupShape::from_torsion_and_rank(b(&[4, 2, 6]), 1);
        assert_eq!(s.divisors(), &b(&[2, 2, 12, 0])[..]);
        assert_eq!(s.to_string(), "Z + Z/2 + Z/2 + Z/12");
    }

    #[test]
    fn renders_trivial_as_zero() {
        assert_eq!(AbGroupShape::trivial().to_string(), "0");
        let s = AbGroupShape::from_diagonal(&Ring::modulo(4), &b(&[0, 2, 1]));
        assert_eq!(s.to_string(), "Z/2 + Z/4");
    }

    #[test]
    fn rejects_non_chains() {
        assert!(AbGroupShape::from_divisors(b(&[3, 2])).is_none());
        assert!(AbGroupShape::from_divisors(b(&[2, 4, 0])).is_some());
    }
}
