//! Sparse multivariate polynomials over generic recurrence symbols.
//!
//! A [`SymbolicPoly`] maps canonical monomials ([`SymbolProduct`]) to exact
//! rational coefficients. Invariants:
//!
//! - no monomial is stored with a zero coefficient; the empty map is the
//!   zero polynomial,
//! - the factors of a `SymbolProduct` are kept sorted, so structurally
//!   equal products compare equal,
//! - monomials order by total degree first, then lexicographically on the
//!   sorted factor list, which makes map iteration the canonical rendering
//!   order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Signed, Zero};
use num::BigRational;

/// One generic symbol of the recurrence: a coefficient `a[n,j]`, a forcing
/// value `c[l]`, or the initial value `w0`.
///
/// The derived order (`A` by `(n, j)`, then `C` by `l`, then `W0`) is the
/// canonical factor order inside a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    A { n: u32, j: u32 },
    C { l: u32 },
    W0,
}

impl Symbol {
    /// Coefficient symbol `a[n,j]`; requires `0 <= j < n`.
    pub fn a(n: u32, j: u32) -> Symbol {
        assert!(n >= 1 && j < n, "a[{n},{j}] is outside the coefficient domain");
        Symbol::A { n, j }
    }

    /// Forcing symbol `c[l]`; requires `l >= 1`.
    pub fn c(l: u32) -> Symbol {
        assert!(l >= 1, "c[{l}] is outside the forcing domain");
        Symbol::C { l }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::A { n, j } => write!(f, "a[{n},{j}]"),
            Symbol::C { l } => write!(f, "c[{l}]"),
            Symbol::W0 => write!(f, "w0"),
        }
    }
}

/// A sorted multiset of symbols: one monomial. Repeated factors are powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolProduct {
    factors: Vec<Symbol>,
}

impl SymbolProduct {
    /// The empty product (the constant monomial).
    pub fn empty() -> SymbolProduct {
        SymbolProduct::default()
    }

    pub fn single(s: Symbol) -> SymbolProduct {
        SymbolProduct { factors: vec![s] }
    }

    pub fn from_symbols<I: IntoIterator<Item = Symbol>>(symbols: I) -> SymbolProduct {
        let mut factors: Vec<Symbol> = symbols.into_iter().collect();
        factors.sort();
        SymbolProduct { factors }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Symbol] {
        &self.factors
    }

    /// Merge two sorted factor lists.
    pub fn mul(&self, other: &SymbolProduct) -> SymbolProduct {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut k) = (0, 0);
        while i < self.factors.len() && k < other.factors.len() {
            if self.factors[i] <= other.factors[k] {
                factors.push(self.factors[i]);
                i += 1;
            } else {
                factors.push(other.factors[k]);
                k += 1;
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[k..]);
        SymbolProduct { factors }
    }
}

impl Ord for SymbolProduct {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors
            .len()
            .cmp(&other.factors.len())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for SymbolProduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymbolProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.factors.len() {
            let sym = self.factors[i];
            let mut power = 1;
            while i + power < self.factors.len() && self.factors[i + power] == sym {
                power += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{sym}")?;
            if power > 1 {
                write!(f, "^{power}")?;
            }
            i += power;
        }
        Ok(())
    }
}

pub(crate) fn fmt_big_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicPoly {
    terms: BTreeMap<SymbolProduct, BigRational>,
}

impl SymbolicPoly {
    pub fn zero() -> SymbolicPoly {
        SymbolicPoly::default()
    }

    pub fn one() -> SymbolicPoly {
        SymbolicPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> SymbolicPoly {
        SymbolicPoly::from_terms([(SymbolProduct::empty(), c)])
    }

    pub fn symbol(s: Symbol) -> SymbolicPoly {
        SymbolicPoly::from_terms([(SymbolProduct::single(s), BigRational::one())])
    }

    /// Accumulates duplicate monomials and drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (SymbolProduct, BigRational)>>(
        terms: I,
    ) -> SymbolicPoly {
        let mut map: BTreeMap<SymbolProduct, BigRational> = BTreeMap::new();
        for (monomial, coeff) in terms {
            match map.entry(monomial) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += coeff;
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        SymbolicPoly { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .first_key_value()
                .is_some_and(|(m, c)| m.is_empty() && c.is_one())
    }

    pub fn num_monomials(&self) -> usize {
        self.terms.len()
    }

    /// Monomials in canonical order (degree ascending, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (&SymbolProduct, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of `monomial`, zero when absent.
    pub fn coefficient(&self, monomial: &SymbolProduct) -> BigRational {
        self.terms.get(monomial).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, rhs: &SymbolicPoly) -> SymbolicPoly {
        let mut terms = self.terms.clone();
        for (monomial, coeff) in &rhs.terms {
            match terms.entry(monomial.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += coeff;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        SymbolicPoly { terms }
    }

    pub fn neg(&self) -> SymbolicPoly {
        SymbolicPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &SymbolicPoly) -> SymbolicPoly {
        SymbolicPoly::from_terms(self.terms.iter().flat_map(|(ml, cl)| {
            rhs.terms.iter().map(move |(mr, cr)| (ml.mul(mr), cl * cr))
        }))
    }
}

impl fmt::Display for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (monomial, coeff) in &self.terms {
            let negative = coeff.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let magnitude = coeff.abs();
            if monomial.is_empty() {
                write!(f, "{}", fmt_big_rational(&magnitude))?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{}*", fmt_big_rational(&magnitude))?;
                }
                write!(f, "{monomial}")?;
            }
        }
        Ok(())
    }
}
