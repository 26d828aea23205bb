//! Chern numbers, BMY/Noether defects, and the functional `chi + beta sigma`.
//!
//! All arithmetic is exact over `i64` and `Ratio<i64>`.

use alloc::string::String;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::blocks::Block;

pub type Rational = num_rational::Ratio<i64>;

/// Imported fact attached to family reports; never computed here.
pub const IMPORTED_INTERVAL_NOTE: &str =
    "known externally: [-1, 1] lies in the finiteness domain of chi + beta sigma for every group (recorded, not computed)";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeographyError {
    #[error("{name}: chi + sigma = {value} is not divisible by 4")]
    ChiHNotIntegral { name: String, value: i64 },
    #[error("holomorphic Euler characteristic has zero leading coefficient")]
    ZeroLeadingChiH,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeographyPoint {
    pub name: String,
    pub chi: i64,
    pub sigma: i64,
    pub c1sq: i64,
    pub chi_h: i64,
    /// `9 chi_h - c1^2`; nonnegative on or below the BMY line.
    pub bmy_defect: i64,
    /// `c1^2 - 2 chi_h + 6`; nonnegative above the Noether line.
    pub noether_defect: i64,
    /// `c1^2 / chi_h`, `None` when `chi_h = 0`.
    pub slope: Option<Rational>,
}

impl GeographyPoint {
    pub fn from_invariants(name: impl Into<String>, chi: i64, sigma: i64) -> Result<Self, GeographyError> {
        let name = name.into();
        if (chi + sigma) % 4 != 0 {
            return Err(GeographyError::ChiHNotIntegral { name, value: chi + sigma });
        }
        let c1sq = 2 * chi + 3 * sigma;
        let chi_h = (chi + sigma) / 4;
        Ok(GeographyPoint {
            name,
            chi,
            sigma,
            c1sq,
            chi_h,
            bmy_defect: 9 * chi_h - c1sq,
            noether_defect: c1sq - 2 * chi_h + 6,
            slope: (chi_h != 0).then(|| Rational::new(c1sq, chi_h)),
        })
    }
}

impl fmt::Display for GeographyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: chi={} sigma={} c1^2={} chi_h={} slope={} bmy_defect={} noether_defect={}",
            self.name,
            self.chi,
            self.sigma,
            self.c1sq,
            self.chi_h,
            SlopeDisplay(self.slope),
            self.bmy_defect,
            self.noether_defect
        )
    }
}

/// Prints a slope as `p/q`, or `—` when undefined.
pub struct SlopeDisplay(pub Option<Rational>);

impl fmt::Display for SlopeDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => f.write_str("—"),
        }
    }
}

pub fn point(b: &Block) -> Result<GeographyPoint, GeographyError> {
    GeographyPoint::from_invariants(b.name.clone(), b.chi, b.sigma)
}

pub fn f_value(b: &Block, beta: Rational) -> Rational {
    Rational::from_integer(b.chi) + beta * b.sigma
}

/// `chi(n, k) = c2 n^2 + c1 n + c0 + group_chi k`, likewise for sigma,
/// where `k` is the group term `g + r + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticFamily {
    pub chi_poly: [i64; 3],
    pub sigma_poly: [i64; 3],
    pub group_term: (i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Behavior {
    DivergesToMinusInfinity,
    BoundedBelow,
}

/// The coefficient of `chi + beta sigma` (as a polynomial in `n`) that
/// decided the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub degree: u32,
    pub coefficient: Rational,
}

impl QuadraticFamily {
    /// The `M(G, n)` family.
    pub const fn mgn() -> Self {
        QuadraticFamily {
            chi_poly: [75, 256, 130],
            sigma_poly: [25, -68, -78],
            group_term: (12, -8),
        }
    }

    pub fn chi(&self, n: i64, k: i64) -> i64 {
        let [a, b, c] = self.chi_poly;
        a * n * n + b * n + c + self.group_term.0 * k
    }

    pub fn sigma(&self, n: i64, k: i64) -> i64 {
        let [a, b, c] = self.sigma_poly;
        a * n * n + b * n + c + self.group_term.1 * k
    }

    pub fn point(&self, name: impl Into<String>, n: i64, k: i64) -> Result<GeographyPoint, GeographyError> {
        GeographyPoint::from_invariants(name, self.chi(n, k), self.sigma(n, k))
    }

    /// Coefficients `[n^2, n^1]` of `c1^2(n)`; the constant includes `k`.
    pub fn c1sq_poly(&self) -> [i64; 2] {
        [
            2 * self.chi_poly[0] + 3 * self.sigma_poly[0],
            2 * self.chi_poly[1] + 3 * self.sigma_poly[1],
        ]
    }

    /// Coefficient of `k` in `c1^2`.
    pub fn c1sq_group_term(&self) -> i64 {
        2 * self.group_term.0 + 3 * self.group_term.1
    }

    /// Coefficients `[n^2, n^1]` of `chi_h(n)`.
    pub fn chi_h_poly(&self) -> [Rational; 2] {
        [
            Rational::new(self.chi_poly[0] + self.sigma_poly[0], 4),
            Rational::new(self.chi_poly[1] + self.sigma_poly[1], 4),
        ]
    }
}

/// Sign of `lim_n chi(n) + beta sigma(n)`, decided by the leading nonzero
/// coefficient of degree at least one.
pub fn family_behavior(fam: &QuadraticFamily, beta: Rational) -> (Behavior, Witness) {
    let coeff = |i: usize| Rational::from_integer(fam.chi_poly[i]) + beta * fam.sigma_poly[i];
    for (i, degree) in [(0, 2), (1, 1)] {
        let c = coeff(i);
        if !c.is_zero() {
            let behavior = if c.is_negative() {
                Behavior::DivergesToMinusInfinity
            } else {
                Behavior::BoundedBelow
            };
            return (behavior, Witness { degree, coefficient: c });
        }
    }
    (Behavior::BoundedBelow, Witness { degree: 0, coefficient: coeff(2) })
}

/// `lim_n c1^2(n) / chi_h(n)`, the ratio of leading coefficients.
pub fn slope_limit(fam: &QuadraticFamily) -> Result<Rational, GeographyError> {
    let c1 = fam.c1sq_poly();
    let ch = fam.chi_h_poly();
    for (c, h) in c1.iter().zip(ch.iter()) {
        if !h.is_zero() {
            return Ok(Rational::from_integer(*c) / h);
        }
        if *c != 0 {
            break;
        }
    }
    Err(GeographyError::ZeroLeadingChiH)
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;
    use super::*;
    use crate::blocks::{block, CatalogKind};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn trivial_group_n2_point() {
        let fam = QuadraticFamily::mgn();
        let p = fam.point("M", 2, 1).unwrap();
        assert_eq!((p.chi, p.sigma), (954, -122));
        assert_eq!((p.c1sq, p.chi_h, p.bmy_defect), (1542, 208, 330));
        assert_eq!(p.slope, Some(r(1542, 208)));
    }

    #[test]
    fn elliptic_one_point() {
        let p = point(&block(&CatalogKind::Elliptic(1)).unwrap()).unwrap();
        assert_eq!((p.c1sq, p.chi_h, p.bmy_defect), (0, 1, 9));
    }

    #[test]
    fn zero_block_has_undefined_slope() {
        let p = point(&block(&CatalogKind::Elbow(3)).unwrap()).unwrap();
        assert_eq!((p.c1sq, p.chi_h, p.bmy_defect, p.noether_defect), (0, 0, 0, 6));
        assert_eq!(p.slope, None);
        assert_eq!(SlopeDisplay(p.slope).to_string(), "—");
    }

    #[test]
    fn divisibility_enforced() {
        assert!(GeographyPoint::from_invariants("bad", 3, 0).is_err());
    }

    #[test]
    fn f_values() {
        let e = block(&CatalogKind::Elliptic(2)).unwrap();
        assert_eq!(f_value(&e, Rational::zero()), r(24, 1));
        let mut w = e.clone();
        w.chi = 461;
        w.sigma = -121;
        assert_eq!(f_value(&w, r(3, 2)), r(559, 2));
        w.chi = 954;
        w.sigma = -122;
        assert_eq!(f_value(&w, r(-3, 1)), r(1320, 1));
    }

    #[test]
    fn behaviors() {
        let fam = QuadraticFamily::mgn();
        let (b, w) = family_behavior(&fam, r(-4, 1));
        assert_eq!(b, Behavior::DivergesToMinusInfinity);
        assert_eq!(w, Witness { degree: 2, coefficient: r(-25, 1) });
        let (b, w) = family_behavior(&fam, r(-3, 1));
        assert_eq!(b, Behavior::BoundedBelow);
        assert_eq!(w, Witness { degree: 1, coefficient: r(460, 1) });
        assert_eq!(family_behavior(&fam, Rational::zero()).1.coefficient, r(75, 1));
    }

    #[test]
    fn slope_limits() {
        assert_eq!(slope_limit(&QuadraticFamily::mgn()), Ok(r(9, 1)));
        let constant = QuadraticFamily { chi_poly: [0, 0, 12], sigma_poly: [0, 0, -8], group_term: (0, 0) };
        assert_eq!(slope_limit(&constant), Err(GeographyError::ZeroLeadingChiH));
        let linear = QuadraticFamily { chi_poly: [0, 4, 0], sigma_poly: [0, 0, 0], group_term: (0, 0) };
        assert_eq!(slope_limit(&linear), Ok(r(8, 1)));
    }

    #[test]
    fn group_term_cancels_in_c1sq() {
        assert_eq!(QuadraticFamily::mgn().c1sq_group_term(), 0);
    }
}
