//! Symbolic expansion over generic coefficients, and its canonical text
//! rendering.
//!
//! `expand_v(n)` is the fully expanded homogeneous solution (`2^(n-1)`
//! monomials). `expand_w_grouped(n)` groups the expansion of the term
//! `w(n)` by carrier — `c[n], c[n-1], ..., c[1], w0` — where the group of
//! `c[l]` collects the chains from `l` to `n` (the differenced operator at
//! order `n - l` under shift `l`) and the group of `w0` is `expand_v(n)`.
//!
//! Rendering is deterministic: monomials sort by total degree, then
//! lexicographically; symbols print as `a[n,j]`, `c[l]`, `w0`; unit
//! coefficients are suppressed. The rendered text is the stable output the
//! command-line `expand` command prints, so format changes are breaking
//! changes.

use crate::error::{Error, Result};
use crate::poly::SymbolicPoly;
use crate::recurrence::eval_homogeneous_shifted;
use crate::scalar::Scalar;
use crate::source::CoefficientSource;
use std::fmt;

/// Default order bound for symbolic expansion (the monomial count doubles
/// per order).
pub const DEFAULT_SYMBOLIC_CAP: u32 = 16;

/// What a group of the expansion multiplies: a forcing value or the
/// initial value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    C(u32),
    W0,
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::C(l) => write!(f, "c[{l}]"),
            Carrier::W0 => write!(f, "w0"),
        }
    }
}

/// The expansion of `w(n)` grouped by carrier, in display order
/// `c[n], ..., c[1], w0`. Each group polynomial uses coefficient symbols
/// only.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupedExpansion {
    n: u32,
    groups: Vec<(Carrier, SymbolicPoly)>,
}

impl GroupedExpansion {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn groups(&self) -> &[(Carrier, SymbolicPoly)] {
        &self.groups
    }

    pub fn group(&self, carrier: Carrier) -> Option<&SymbolicPoly> {
        self.groups
            .iter()
            .find(|(c, _)| *c == carrier)
            .map(|(_, poly)| poly)
    }

    /// `sum over groups of carrier * polynomial` — the ungrouped expansion
    /// of `w(n)`.
    pub fn reassemble(&self) -> SymbolicPoly {
        let mut total = SymbolicPoly::zero();
        for (carrier, poly) in &self.groups {
            let carrier_poly = match carrier {
                Carrier::C(l) => SymbolicPoly::symbol(crate::poly::Symbol::c(*l)),
                Carrier::W0 => SymbolicPoly::symbol(crate::poly::Symbol::W0),
            };
            total = total.add(&carrier_poly.mul(poly));
        }
        total
    }
}

fn check_order(n: u32, cap: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain("symbolic expansion starts at n = 1".into()));
    }
    if n > cap {
        return Err(Error::ResourceCap { n, cap });
    }
    Ok(())
}

fn expect_poly(scalar: Scalar) -> SymbolicPoly {
    match scalar {
        Scalar::Symbolic(poly) => poly,
        other => unreachable!("generic sources yield symbolic scalars, got {other}"),
    }
}

/// Fully expanded homogeneous solution over generic coefficients.
pub fn expand_v(n: u32) -> Result<SymbolicPoly> {
    expand_v_capped(n, DEFAULT_SYMBOLIC_CAP)
}

pub fn expand_v_capped(n: u32, cap: u32) -> Result<SymbolicPoly> {
    check_order(n, cap)?;
    let mut v = eval_homogeneous_shifted(&CoefficientSource::generic(), 0, n as usize)?;
    Ok(expect_poly(v.pop().expect("nonempty by construction")))
}

/// The grouped expansion of the term `w(n)` over generic symbols.
pub fn expand_w_grouped(n: u32) -> Result<GroupedExpansion> {
    expand_w_grouped_capped(n, DEFAULT_SYMBOLIC_CAP)
}

pub fn expand_w_grouped_capped(n: u32, cap: u32) -> Result<GroupedExpansion> {
    check_order(n, cap)?;
    let generic = CoefficientSource::generic();
    let mut groups = Vec::with_capacity(n as usize + 1);
    for l in (1..=n).rev() {
        let order = (n - l) as usize;
        let mut v = eval_homogeneous_shifted(&generic, l, order)?;
        groups.push((Carrier::C(l), expect_poly(v.pop().expect("nonempty"))));
    }
    groups.push((Carrier::W0, expand_v_capped(n, cap)?));
    Ok(GroupedExpansion { n, groups })
}

/// Canonical text form of a polynomial.
pub fn render(poly: &SymbolicPoly) -> String {
    poly.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Symbol, SymbolProduct};
    use crate::problem::Problem;
    use crate::recurrence::eval_direct;
    use crate::source::ForcingSource;
    use num::traits::One;
    use num::BigRational;
    use std::collections::BTreeSet;

    fn monomial_set(poly: &SymbolicPoly) -> BTreeSet<SymbolProduct> {
        poly.terms()
            .map(|(m, c)| {
                assert!(c.is_one(), "all expansion coefficients are 1");
                m.clone()
            })
            .collect()
    }

    fn chains(monomials: &[&[(u32, u32)]]) -> BTreeSet<SymbolProduct> {
        monomials
            .iter()
            .map(|m| SymbolProduct::from_symbols(m.iter().map(|&(n, j)| Symbol::a(n, j))))
            .collect()
    }

    #[test]
    fn first_four_expansions() {
        assert_eq!(monomial_set(&expand_v(1).unwrap()), chains(&[&[(1, 0)]]));
        assert_eq!(
            monomial_set(&expand_v(2).unwrap()),
            chains(&[&[(2, 0)], &[(1, 0), (2, 1)]])
        );
        assert_eq!(
            monomial_set(&expand_v(3).unwrap()),
            chains(&[
                &[(3, 0)],
                &[(1, 0), (3, 1)],
                &[(2, 0), (3, 2)],
                &[(1, 0), (2, 1), (3, 2)],
            ])
        );
        assert_eq!(
            monomial_set(&expand_v(4).unwrap()),
            chains(&[
                &[(4, 0)],
                &[(1, 0), (4, 1)],
                &[(2, 0), (4, 2)],
                &[(1, 0), (2, 1), (4, 2)],
                &[(3, 0), (4, 3)],
                &[(1, 0), (3, 1), (4, 3)],
                &[(2, 0), (3, 2), (4, 3)],
                &[(1, 0), (2, 1), (3, 2), (4, 3)],
            ])
        );
    }

    #[test]
    fn monomial_counts_double() {
        for n in 1..=10u32 {
            let v = expand_v(n).unwrap();
            assert_eq!(v.num_monomials(), 1 << (n - 1));
        }
    }

    #[test]
    fn grouped_expansion_of_order_four() {
        let grouped = expand_w_grouped(4).unwrap();
        let carriers: Vec<Carrier> = grouped.groups().iter().map(|(c, _)| *c).collect();
        assert_eq!(
            carriers,
            vec![
                Carrier::C(4),
                Carrier::C(3),
                Carrier::C(2),
                Carrier::C(1),
                Carrier::W0
            ]
        );
        assert_eq!(
            monomial_set(grouped.group(Carrier::C(4)).unwrap()),
            chains(&[&[]])
        );
        assert_eq!(
            monomial_set(grouped.group(Carrier::C(3)).unwrap()),
            chains(&[&[(4, 3)]])
        );
        assert_eq!(
            monomial_set(grouped.group(Carrier::C(2)).unwrap()),
            chains(&[&[(4, 2)], &[(3, 2), (4, 3)]])
        );
        assert_eq!(
            monomial_set(grouped.group(Carrier::C(1)).unwrap()),
            chains(&[
                &[(4, 1)],
                &[(2, 1), (4, 2)],
                &[(3, 1), (4, 3)],
                &[(2, 1), (3, 2), (4, 3)],
            ])
        );
        assert_eq!(
            grouped.group(Carrier::W0).unwrap(),
            &expand_v(4).unwrap()
        );
    }

    #[test]
    fn grouped_expansion_of_order_one() {
        let grouped = expand_w_grouped(1).unwrap();
        assert_eq!(grouped.groups().len(), 2);
        assert_eq!(grouped.group(Carrier::C(1)).unwrap(), &SymbolicPoly::one());
        assert_eq!(
            grouped.group(Carrier::W0).unwrap(),
            &SymbolicPoly::symbol(Symbol::a(1, 0))
        );
    }

    #[test]
    fn group_sizes_halve_per_shift() {
        let n = 7u32;
        let grouped = expand_w_grouped(n).unwrap();
        for l in 1..n {
            let group = grouped.group(Carrier::C(l)).unwrap();
            assert_eq!(group.num_monomials(), 1 << (n - l - 1), "group of c[{l}]");
        }
        assert_eq!(
            grouped.group(Carrier::C(n)).unwrap(),
            &SymbolicPoly::one()
        );
    }

    #[test]
    fn reassembly_matches_direct_evaluation() {
        let problem = Problem::new(
            Scalar::symbol(Symbol::W0),
            CoefficientSource::generic(),
            ForcingSource::generic(),
            5,
        )
        .unwrap();
        let direct = eval_direct(&problem).unwrap();
        for n in 1..=5u32 {
            let grouped = expand_w_grouped(n).unwrap();
            assert_eq!(
                Scalar::Symbolic(grouped.reassemble()),
                direct.terms[n as usize],
                "reassembled w({n})"
            );
        }
    }

    #[test]
    fn rendering_is_canonical() {
        assert_eq!(render(&expand_v(2).unwrap()), "a[2,0] + a[1,0]*a[2,1]");
        assert_eq!(render(&SymbolicPoly::zero()), "0");
        assert_eq!(render(&SymbolicPoly::one()), "1");
        assert_eq!(render(&expand_v(1).unwrap()), "a[1,0]");
    }

    #[test]
    fn rendering_distinguishes_distinct_polynomials() {
        use rand::Rng;

        // Render a batch of random polynomials; distinct polynomials must
        // render to distinct strings.
        let mut rng = crate::random::seeded_rng(0x11111);
        let mut polys: Vec<SymbolicPoly> = Vec::new();
        for _ in 0..200 {
            let mut poly = SymbolicPoly::zero();
            for _ in 0..rng.random_range(0..4usize) {
                let n = rng.random_range(1..=4u32);
                let j = rng.random_range(0..n);
                let repeats = rng.random_range(1..=2usize);
                let coeff = BigRational::new(rng.random_range(-3i64..=3).into(), 1.into());
                poly = poly.add(&SymbolicPoly::from_terms([(
                    SymbolProduct::from_symbols((0..repeats).map(|_| Symbol::a(n, j))),
                    coeff,
                )]));
            }
            polys.push(poly);
        }
        polys.sort_by_key(render);
        polys.dedup();
        let rendered: BTreeSet<String> = polys.iter().map(render).collect();
        assert_eq!(rendered.len(), polys.len());
    }

    #[test]
    fn caps_are_enforced() {
        assert_eq!(
            expand_v(17).unwrap_err(),
            Error::ResourceCap { n: 17, cap: 16 }
        );
        assert!(matches!(expand_v(0), Err(Error::Domain(_))));
        assert_eq!(
            expand_w_grouped_capped(9, 8).unwrap_err(),
            Error::ResourceCap { n: 9, cap: 8 }
        );
    }
}
