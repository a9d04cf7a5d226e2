//! Arithmetic constraints on the twist order `m` and the integer
//! `d = 2g / [Z:Q]`, where `Z` is the center of the endomorphism algebra.
//!
//! When `μ_m ⊆ Z`, the cyclotomic field `Q(ζ_m)` sits inside `Z`, so
//! `φ(m) | [Z:Q] | 2g`. That single divisibility drives everything here.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{factorize, gcd, is_power_of_two, is_squarefree, phi};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlbertError {
    InconsistentProfile(String),
}

impl fmt::Display for AlbertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlbertError::InconsistentProfile(why) => write!(f, "inconsistent profile: {why}"),
        }
    }
}

impl core::error::Error for AlbertError {}

/// Upper end of the scan in [`admissible_m`].
///
/// `φ(m) ≥ √(m/2)` for every `m ≥ 1`, so `φ(m) ≤ 2g` forces `m ≤ 8g²`.
pub fn scan_bound(g: u64) -> u64 {
    8 * g * g
}

/// Odd `m ≥ 3` with `φ(m) | 2g`, in increasing order.
pub fn admissible_m(g: u64) -> Vec<u64> {
    assert!(g >= 1, "dimension must be positive");
    (3..=scan_bound(g)).step_by(2).filter(|&m| (2 * g) % phi(m) == 0).collect()
}

/// `m` is squarefree and each prime factor has the form `2^k + 1`.
pub fn fermat_squarefree_check(m: u64) -> bool {
    m >= 3
        && m % 2 == 1
        && is_squarefree(m)
        && factorize(m).iter().all(|&(p, _)| is_power_of_two(p - 1))
}

/// What is known about the endomorphism algebra of a simple abelian variety
/// of dimension `g`, together with the twist order `m`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlbertProfile {
    pub g: u64,
    pub m: u64,
    /// `[Z:Q]`.
    pub center_degree: Option<u64>,
    pub d: Option<u64>,
    /// `δ` with `δ²` the dimension of the algebra over its center.
    pub delta: Option<u64>,
    /// Degree of the maximal totally real subfield of the center.
    pub e0: Option<u64>,
}

impl AlbertProfile {
    pub fn new(g: u64, m: u64) -> AlbertProfile {
        AlbertProfile { g, m, ..AlbertProfile::default() }
    }

    /// Checks the profile. With `mu_in_center`, also requires
    /// `φ(m) | [Z:Q]` and hence `d | 2g/φ(m)`.
    pub fn validate(&self, mu_in_center: bool) -> Result<(), AlbertError> {
        let bad = |why: String| Err(AlbertError::InconsistentProfile(why));
        let two_g = 2 * self.g;
        if self.g == 0 {
            return bad("g must be positive".into());
        }
        if self.m == 0 {
            return bad("m must be positive".into());
        }
        if let Some(cd) = self.center_degree {
            if cd == 0 || two_g % cd != 0 {
                return bad(format!("center degree {cd} does not divide 2g = {two_g}"));
            }
            if mu_in_center && cd % phi(self.m) != 0 {
                return bad(format!("φ({}) = {} does not divide the center degree {cd}", self.m, phi(self.m)));
            }
        }
        if let Some(d) = self.d {
            if d == 0 || two_g % d != 0 {
                return bad(format!("d = {d} does not divide 2g = {two_g}"));
            }
            if let Some(cd) = self.center_degree {
                if d * cd != two_g {
                    return bad(format!("d·[Z:Q] = {} ≠ 2g = {two_g}", d * cd));
                }
            }
            if mu_in_center && (two_g % phi(self.m) != 0 || (two_g / phi(self.m)) % d != 0) {
                return bad(format!("d = {d} does not divide 2g/φ(m)"));
            }
        }
        if mu_in_center && two_g % phi(self.m) != 0 {
            return bad(format!("φ({}) = {} does not divide 2g = {two_g}", self.m, phi(self.m)));
        }
        let e0 = self.e0.unwrap_or(1);
        let delta = self.delta.unwrap_or(1);
        if e0 == 0 || delta == 0 {
            return bad("e0 and δ must be positive".into());
        }
        if self.g % (e0 * delta * delta) != 0 {
            return bad(format!("e0·δ² = {} does not divide g = {}", e0 * delta * delta, self.g));
        }
        Ok(())
    }
}

/// Which piece of data proved `gcd(m, d) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoprimalityRule {
    /// `d` was given.
    GivenD { d: u64 },
    /// `d = 2g / [Z:Q]` from the given center degree.
    CenterDegree { center_degree: u64, d: u64 },
    /// `d` divides `2g/φ(m)`, which is itself coprime to `m`.
    DivisorBound { bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coprimality {
    Certified(CoprimalityRule),
    Unknown(String),
}

/// Tries to prove `gcd(m, d) = 1`, assuming `μ_m ⊆ Z`. Exact data wins: a
/// given `d` or center degree is never overridden by the bound.
pub fn coprimality_certificate(profile: &AlbertProfile) -> Result<Coprimality, AlbertError> {
    profile.validate(true)?;
    let m = profile.m;
    if let Some(d) = profile.d {
        return Ok(if gcd(m, d) == 1 {
            Coprimality::Certified(CoprimalityRule::GivenD { d })
        } else {
            Coprimality::Unknown(format!("gcd(m, d) = gcd({m}, {d}) = {}", gcd(m, d)))
        });
    }
    if let Some(cd) = profile.center_degree {
        let d = 2 * profile.g / cd;
        return Ok(if gcd(m, d) == 1 {
            Coprimality::Certified(CoprimalityRule::CenterDegree { center_degree: cd, d })
        } else {
            Coprimality::Unknown(format!("d = 2g/[Z:Q] = {d} and gcd({m}, {d}) = {}", gcd(m, d)))
        });
    }
    let bound = 2 * profile.g / phi(m);
    Ok(if gcd(m, bound) == 1 {
        Coprimality::Certified(CoprimalityRule::DivisorBound { bound })
    } else {
        Coprimality::Unknown(format!("d divides 2g/φ(m) = {bound}, and gcd({m}, {bound}) = {}", gcd(m, bound)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn admissible_lists() {
        assert_eq!(admissible_m(1), vec![3]);
        assert_eq!(admissible_m(2), vec![3, 5]);
        assert_eq!(admissible_m(3), vec![3, 7, 9]);
        assert_eq!(admissible_m(4), vec![3, 5, 15]);
        assert_eq!(admissible_m(5), vec![3, 11]);
        assert_eq!(admissible_m(6), vec![3, 5, 7, 9, 13, 21]);
        assert_eq!(admissible_m(7), vec![3]);
        assert_eq!(admissible_m(8), vec![3, 5, 15, 17]);
        assert_eq!(admissible_m(16), vec![3, 5, 15, 17, 51]);
    }

    #[test]
    fn totient_lower_bound_holds() {
        for m in 1..200_000u64 {
            let f = phi(m);
            assert!(2 * f * f >= m, "φ({m}) = {f}");
        }
    }

    #[test]
    fn fermat_examples() {
        assert!(fermat_squarefree_check(15));
        assert!(fermat_squarefree_check(3 * 5 * 17));
        assert!(!fermat_squarefree_check(9));
        assert!(!fermat_squarefree_check(7));
        assert!(!fermat_squarefree_check(21));
    }

    #[test]
    fn powers_of_two_give_fermat_products() {
        for a in 0..=4 {
            let g = 1u64 << a;
            let list = admissible_m(g);
            assert!(list.iter().all(|&m| fermat_squarefree_check(m)));
            let direct: Vec<u64> = (3..=scan_bound(g))
                .step_by(2)
                .filter(|&m| fermat_squarefree_check(m) && (2 * g) % phi(m) == 0)
                .collect();
            assert_eq!(list, direct);
        }
    }

    #[test]
    fn certificate_rules() {
        let c = coprimality_certificate(&AlbertProfile::new(5, 11)).unwrap();
        assert_eq!(c, Coprimality::Certified(CoprimalityRule::DivisorBound { bound: 1 }));
        let c = coprimality_certificate(&AlbertProfile::new(7, 3)).unwrap();
        assert_eq!(c, Coprimality::Certified(CoprimalityRule::DivisorBound { bound: 7 }));
        assert!(matches!(coprimality_certificate(&AlbertProfile::new(6, 3)).unwrap(), Coprimality::Unknown(_)));
        assert!(matches!(coprimality_certificate(&AlbertProfile::new(3, 3)).unwrap(), Coprimality::Unknown(_)));

        let given = AlbertProfile { d: Some(2), ..AlbertProfile::new(6, 3) };
        assert_eq!(coprimality_certificate(&given).unwrap(), Coprimality::Certified(CoprimalityRule::GivenD { d: 2 }));
        let given = AlbertProfile { d: Some(3), ..AlbertProfile::new(6, 3) };
        assert!(matches!(coprimality_certificate(&given).unwrap(), Coprimality::Unknown(_)));
        let cd = AlbertProfile { center_degree: Some(6), ..AlbertProfile::new(6, 3) };
        assert_eq!(
            coprimality_certificate(&cd).unwrap(),
            Coprimality::Certified(CoprimalityRule::CenterDegree { center_degree: 6, d: 2 })
        );
        // exact data is never overridden by the bound
        let exact = AlbertProfile { center_degree: Some(2), ..AlbertProfile::new(3, 3) };
        assert!(matches!(coprimality_certificate(&exact).unwrap(), Coprimality::Unknown(_)));
    }

    #[test]
    fn inconsistent_profiles() {
        let p = AlbertProfile { center_degree: Some(4), ..AlbertProfile::new(3, 3) };
        assert!(coprimality_certificate(&p).is_err());
        let p = AlbertProfile { center_degree: Some(2), d: Some(2), ..AlbertProfile::new(3, 3) };
        assert!(coprimality_certificate(&p).is_err());
        let p = AlbertProfile { d: Some(5), ..AlbertProfile::new(3, 3) };
        assert!(coprimality_certificate(&p).is_err());
        assert!(coprimality_certificate(&AlbertProfile::new(3, 5)).is_err());
        let p = AlbertProfile { delta: Some(2), ..AlbertProfile::new(6, 3) };
        assert!(p.validate(true).is_err());
        let p = AlbertProfile { delta: Some(2), e0: Some(1), ..AlbertProfile::new(4, 3) };
        assert!(p.validate(true).is_ok());
    }

    #[test]
    fn no_certificate_for_known_bad_pairs() {
        for g in 1..=16u64 {
            for m in admissible_m(g) {
                for d in crate::arith::divisors(2 * g / phi(m)) {
                    let p = AlbertProfile { d: Some(d), ..AlbertProfile::new(g, m) };
                    let certified = matches!(coprimality_certificate(&p).unwrap(), Coprimality::Certified(_));
                    assert_eq!(certified, gcd(m, d) == 1, "g={g} m={m} d={d}");
                }
            }
        }
    }
}
