use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The base ring: the integers or a residue ring `Z/n` with `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    IntegersMod(BigInt),
}

impl Ring {
    /// Panics when `n < 2`; use [`Ring::try_modulo`] for untrusted input.
    pub fn modulo(n: u64) -> Ring {
        Ring::try_modulo(BigInt::from(n)).expect("modulus must be at least 2")
    }

    pub fn try_modulo(n: BigInt) -> Option<Ring> {
        if n >= BigInt::from(2) {
            Some(Ring::IntegersMod(n))
        } else {
            None
        }
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            Ring::Integers => None,
            Ring::IntegersMod(n) => Some(n),
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, Ring::Integers)
    }

    /// Canonical representative: unchanged over `Z`, the residue in `[0, n)` over `Z/n`.
    pub fn reduce(&self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => a.clone(),
            Ring::IntegersMod(n) => a.mod_floor(n),
        }
    }

    pub fn reduce_owned(&self, a: BigInt) -> BigInt {
        match self {
            Ring::Integers => a,
            Ring::IntegersMod(n) => {
                if a.is_negative() || &a >= n {
                    a.mod_floor(n)
                } else {
                    a
                }
            }
        }
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        match self {
            Ring::Integers => a.abs().is_one(),
            Ring::IntegersMod(n) => a.gcd(n).is_one(),
        }
    }

    /// Generator of the ideal `(a)` that pivoting compares: `|a|` over `Z`,
    /// `gcd(a, n)` over `Z/n`. Zero for the zero element.
    pub fn ideal_size(&self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => a.abs(),
            Ring::IntegersMod(n) => {
                let r = a.mod_floor(n);
                if r.is_zero() {
                    BigInt::zero()
                } else {
                    r.gcd(n)
                }
            }
        }
    }

    /// A unit `u` with `u * a` equal to the canonical generator of `(a)`.
    /// Over `Z` this is the sign; over `Z/n` the target is `gcd(a, n)`.
    pub fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => {
                if a.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            }
            Ring::IntegersMod(n) => {
                let a = a.mod_floor(n);
                if a.is_zero() {
                    return BigInt::one();
                }
                let g = a.gcd(n);
                let m = n / &g;
                let a_red = &a / &g;
                let mut u = if m.is_one() {
                    BigInt::one()
                } else {
                    mod_inverse(&a_red, &m).expect("a/g is coprime to n/g")
                };
                while !u.gcd(n).is_one() {
                    u += &m;
                }
                u.mod_floor(n)
            }
        }
    }

    pub fn unit_inverse(&self, u: &BigInt) -> BigInt {
        match self {
            Ring::Integers => {
                assert!(u.abs().is_one(), "not a unit in Z");
                u.clone()
            }
            Ring::IntegersMod(n) => mod_inverse(u, n).expect("not a unit"),
        }
    }

    /// Ideal membership `a ∈ (p)` for a pivot already normalized by
    /// [`Ring::normalizing_unit`].
    pub fn divides(&self, p: &BigInt, a: &BigInt) -> bool {
        if p.is_zero() {
            return self.reduce(a).is_zero();
        }
        a.mod_floor(p).is_zero()
    }

    /// Elements `x` with `x * a = 0` are generated by this element.
    pub fn annihilator_generator(&self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => {
                if a.is_zero() {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Ring::IntegersMod(n) => {
                let g = self.ideal_size(a);
                if g.is_zero() {
                    BigInt::one()
                } else {
                    self.reduce(&(n / g))
                }
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::IntegersMod(n) => write!(f, "Z/{n}"),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizing_unit_hits_gcd() {
        let r = Ring::modulo(12);
        for a in 1..12 {
            let a = BigInt::from(a);
            let u = r.normalizing_unit(&a);
            assert!(r.is_unit(&u));
            assert_eq!(r.reduce(&(&u * &a)), r.ideal_size(&a));
        }
    }

    #[test]
    fn annihilators_mod_n() {
        let r = Ring::modulo(4);
        assert_eq!(r.annihilator_generator(&BigInt::from(2)), BigInt::from(2));
        assert_eq!(r.annihilator_generator(&BigInt::from(3)), BigInt::from(0));
        assert_eq!(r.annihilator_generator(&BigInt::from(0)), BigInt::from(1));
    }
}
