//! Sparse multivariate polynomials over the rationals and Buchberger's
//! algorithm under the pure lexicographic order.
//!
//! Variables are `u32` indices; a larger index is a larger variable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Var = u32;

/// A power product, stored as `(variable, exponent)` with variables
/// strictly decreasing and exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    /// From arbitrary `(variable, exponent)` pairs; repeated variables add up.
    pub fn from_powers<I: IntoIterator<Item = (Var, u32)>>(powers: I) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            if e > 0 {
                *map.entry(v).or_default() += e;
            }
        }
        Monomial(map.into_iter().rev().collect())
    }

    /// `(variable, exponent)` pairs, largest variable first.
    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.0.first().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.0.iter().chain(&other.0).copied())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`; `None` unless `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other
                .0
                .iter()
                .map(|&(v, e)| (v, e - self.exponent(v)))
                .filter(|&(_, e)| e > 0)
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            let slot = map.entry(v).or_default();
            *slot = (*slot).max(e);
        }
        Monomial(map.into_iter().rev().collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, _)| other.exponent(v) == 0)
    }
}

impl Ord for Monomial {
    /// Pure lex: compare exponents from the largest variable down.
    fn cmp(&self, other: &Monomial) -> Ordering {
        for (&(va, ea), &(vb, eb)) in self.0.iter().zip(&other.0) {
            match va.cmp(&vb).then(ea.cmp(&eb)) {
                Ordering::Equal => continue,
                unequal => return unequal,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial as a map from monomials to non-zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Polynomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    /// Compares term lists from the leading term down.
    fn cmp(&self, other: &Polynomial) -> Ordering {
        self.terms.iter().rev().cmp(other.terms.iter().rev())
    }
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn constant(c: BigRational) -> Polynomial {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Monomial::var(v), BigRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `m1 - m2` with unit coefficients.
    pub fn binomial(m1: Monomial, m2: Monomial) -> Polynomial {
        Polynomial::from_terms([(m1, BigRational::one()), (m2, -BigRational::one())])
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Largest variable occurring in any term.
    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &other.terms {
            for (t, v) in &self.terms {
                out.add_term(t.mul(m), v * c);
            }
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => Polynomial::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Renders terms in decreasing order with a variable-naming function.
    pub fn render<F: Fn(Var) -> String>(&self, name: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .powers()
                .iter()
                .map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{e}", name(v)) })
                .collect();
            if factors.is_empty() {
                let _ = write!(out, "{magnitude}");
            } else {
                if !magnitude.is_one() {
                    let _ = write!(out, "{magnitude}*");
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// Full multivariate division remainder of `f` by `basis`.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let divisors: Vec<(&Monomial, &BigRational, &Polynomial)> = basis
        .iter()
        .filter_map(|g| g.leading_term().map(|(m, c)| (m, c, g)))
        .collect();
    let mut p = f.clone();
    let mut remainder = Polynomial::zero();
    while let Some((m, c)) = p.terms.pop_last() {
        let hit = divisors
            .iter()
            .find_map(|&(lm, lc, g)| lm.quotient_of(&m).map(|q| (q, lc, g)));
        match hit {
            Some((q, lc, g)) => {
                let factor = -(&c / lc);
                // the leading term cancels exactly; add the rest of g
                for (t, v) in g.terms.iter().rev().skip(1) {
                    p.add_term(t.mul(&q), v * &factor);
                }
            }
            None => {
                remainder.terms.insert(m, c);
            }
        }
    }
    remainder
}

/// `S(f, g) = (L/lt f) f - (L/lt g) g` with `L = lcm(lm f, lm g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (Some((mf, cf)), Some((mg, cg))) = (f.leading_term(), g.leading_term()) else {
        return Polynomial::zero();
    };
    let l = mf.lcm(mg);
    let a = mf.quotient_of(&l).expect("lcm is a multiple");
    let b = mg.quotient_of(&l).expect("lcm is a multiple");
    f.mul_term(&a, &cf.recip()).sub(&g.mul_term(&b, &cg.recip()))
}

/// Size limits for [`buchberger`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_pairs: usize,
    pub max_terms: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_pairs: 50_000,
            max_terms: 10_000,
        }
    }
}

/// Counters collected during a Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub pairs_skipped_coprime: usize,
    pub nonzero_remainders: usize,
    /// Non-zero remainders with more than two terms.
    pub non_binomial_remainders: usize,
}

/// Reduced Gröbner basis (monic, sorted by leading monomial).
pub fn buchberger(gens: &[Polynomial], caps: Caps) -> Result<Vec<Polynomial>> {
    buchberger_with_stats(gens, caps).map(|(basis, _)| basis)
}

/// [`buchberger`] together with run counters.
pub fn buchberger_with_stats(
    gens: &[Polynomial],
    caps: Caps,
) -> Result<(Vec<Polynomial>, BuchbergerStats)> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let m = g.monic();
            if !basis.contains(&m) {
                basis.push(m);
            }
        }
    }
    let mut stats = BuchbergerStats::default();
    // normal strategy: smallest lcm degree first, then smallest lcm
    let mut queue: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();
    let push_pairs = |queue: &mut BTreeSet<_>, basis: &[Polynomial], j: usize| {
        for i in 0..j {
            let l = basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap());
            queue.insert((l.degree(), l, i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &basis, j);
    }
    while let Some((_, _, i, j)) = queue.pop_first() {
        let (mi, mj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if mi.is_coprime(mj) {
            stats.pairs_skipped_coprime += 1;
            continue;
        }
        if stats.pairs_reduced >= caps.max_pairs {
            return Err(Error::Resource(format!(
                "S-pair cap of {} reached with {} basis elements and {} pairs pending",
                caps.max_pairs,
                basis.len(),
                queue.len() + 1
            )));
        }
        stats.pairs_reduced += 1;
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.num_terms() > caps.max_terms {
            return Err(Error::Resource(format!(
                "polynomial with {} terms exceeds the cap of {} after {} S-pairs",
                r.num_terms(),
                caps.max_terms,
                stats.pairs_reduced
            )));
        }
        stats.nonzero_remainders += 1;
        if r.num_terms() > 2 {
            stats.non_binomial_remainders += 1;
        }
        basis.push(r.monic());
        push_pairs(&mut queue, &basis, basis.len() - 1);
    }
    Ok((interreduce(basis), stats))
}

/// Minimal, inter-reduced, monic and sorted form of a Gröbner basis.
pub fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.retain(|g| !g.is_zero());
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g.monic());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(reduce(&minimal[k], &others).monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    reduced
}

/// Every S-pair reduces to zero modulo `basis`.
pub fn buchberger_criterion(basis: &[Polynomial]) -> bool {
    (0..basis.len()).all(|j| {
        (0..j).all(|i| reduce(&s_polynomial(&basis[i], &basis[j]), basis).is_zero())
    })
}

/// `f ∈ <gb>`; `gb` must be a Gröbner basis.
pub fn ideal_membership(f: &Polynomial, gb: &[Polynomial]) -> Result<bool> {
    if !buchberger_criterion(gb) {
        return Err(Error::Contract("basis is not a Gröbner basis".into()));
    }
    Ok(reduce(f, gb).is_zero())
}

/// Generators of `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
///
/// `t` must exceed every variable used by the generators, so that it is
/// the largest variable of the lexicographic order.
pub fn intersect_ideals(
    i_gens: &[Polynomial],
    j_gens: &[Polynomial],
    t: Var,
    caps: Caps,
) -> Result<Vec<Polynomial>> {
    if i_gens.iter().chain(j_gens).any(|g| g.max_var().is_some_and(|v| v >= t)) {
        return Err(Error::Input("elimination variable must exceed all ring variables".into()));
    }
    let tv = Polynomial::var(t);
    let one_minus_t = Polynomial::constant(BigRational::one()).sub(&tv);
    let mut gens: Vec<Polynomial> = i_gens.iter().map(|g| g.mul(&tv)).collect();
    gens.extend(j_gens.iter().map(|g| g.mul(&one_minus_t)));
    let gb = buchberger(&gens, caps)?;
    Ok(gb.into_iter().filter(|g| !g.contains_var(t)).collect())
}

/// Indexing of the unknowns `p_{ix}` (row `i`, column vertex `x`) as
/// variables, so that `p_{ix} > p_{jy}` iff `i > j`, or `i = j` and `x > y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarLayout {
    pub d0: u32,
    pub num_cols: usize,
}

impl VarLayout {
    /// Variable of `p_{ix}`, `i` 1-based, `x` a vertex index.
    pub fn var(&self, i: u32, x: usize) -> Var {
        ((i - 1) as usize * self.num_cols + x) as Var
    }

    /// `(i, x)` of a variable.
    pub fn decode(&self, v: Var) -> (u32, usize) {
        let v = v as usize;
        ((v / self.num_cols) as u32 + 1, v % self.num_cols)
    }

    pub fn num_vars(&self) -> Var {
        (self.d0 as usize * self.num_cols) as Var
    }
}

/// Row and column degree vectors of a monomial in the `p_{ix}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bidegree {
    pub rows: BTreeMap<u32, u32>,
    pub cols: BTreeMap<usize, u32>,
}

pub fn bidegree(m: &Monomial, layout: &VarLayout) -> Bidegree {
    let mut rows = BTreeMap::new();
    let mut cols = BTreeMap::new();
    for &(v, e) in m.powers() {
        let (i, x) = layout.decode(v);
        *rows.entry(i).or_default() += e;
        *cols.entry(x).or_default() += e;
    }
    Bidegree { rows, cols }
}

/// All terms of `f` share one bidegree.
pub fn is_bihomogeneous(f: &Polynomial, layout: &VarLayout) -> bool {
    let mut degrees = f.terms().map(|(m, _)| bidegree(m, layout));
    match degrees.next() {
        None => true,
        Some(first) => degrees.all(|d| d == first),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ratio;

    // columns x < y are vertices 0, 1; two output letters
    const L: VarLayout = VarLayout { d0: 2, num_cols: 3 };

    fn p(i: u32, x: usize) -> Monomial {
        Monomial::var(L.var(i, x))
    }

    fn minor(i: u32, j: u32, x: usize, y: usize) -> Polynomial {
        Polynomial::binomial(p(i, x).mul(&p(j, y)), p(i, y).mul(&p(j, x)))
    }

    fn name(v: Var) -> String {
        let (i, x) = L.decode(v);
        format!("p{i}{}", x + 1)
    }

    #[test]
    fn variable_order() {
        assert!(p(2, 0) > p(1, 2));
        assert!(p(1, 2) > p(1, 1));
        assert!(p(2, 0).mul(&p(1, 0)) > p(1, 2).mul(&p(1, 2)));
        assert!(p(1, 1).mul(&p(1, 0)) > p(1, 1));
        assert!(Monomial::one() < p(1, 0));
    }

    #[test]
    fn leading_term_of_edge_binomial() {
        let f = minor(1, 2, 0, 1);
        assert_eq!(f.leading_monomial().unwrap(), &p(2, 1).mul(&p(1, 0)));
        assert_eq!(f.leading_coefficient().unwrap(), &ratio(1, 1));
    }

    #[test]
    fn reduce_examples() {
        let f = minor(1, 2, 0, 1);
        assert!(reduce(&f, std::slice::from_ref(&f)).is_zero());
        // p_{1x} p_{2y} − p_{1y} p_{2x} modulo p_{1x}
        let r = reduce(&f, &[Polynomial::term(p(1, 0), ratio(1, 1))]);
        assert_eq!(r, Polynomial::term(p(1, 1).mul(&p(2, 0)), ratio(-1, 1)));
    }

    #[test]
    fn s_polynomial_examples() {
        let f = minor(1, 2, 0, 2);
        assert!(s_polynomial(&f, &f).is_zero());
        // f^{12}_{13} and f^{12}_{23} share p_{2,1}... hand computation:
        // S = p_{13} (p_{11} p_{22} − p_{12} p_{21})
        let g = minor(1, 2, 1, 2);
        let s = s_polynomial(&f, &g);
        let expected = minor(1, 2, 0, 1).mul_term(&p(1, 2), &ratio(1, 1));
        assert!(s == expected || s == expected.scale(&ratio(-1, 1)), "{}", s.render(name));
    }

    #[test]
    fn coprime_pair_reduces_to_zero() {
        let f = Polynomial::binomial(p(2, 0).mul(&p(1, 1)), p(1, 0));
        let g = Polynomial::binomial(p(2, 2), p(1, 2));
        assert!(f.leading_monomial().unwrap().is_coprime(g.leading_monomial().unwrap()));
        assert!(reduce(&s_polynomial(&f, &g), &[f, g]).is_zero());
    }

    #[test]
    fn criterion_hand_example() {
        // lm(f) = p_{2y} p_{1x}, so S(f, p_{1x}) = -p_{1y} p_{2x}, which is
        // irreducible modulo {f, p_{1x}}.
        let f = minor(1, 2, 0, 1);
        let m = Polynomial::term(p(1, 0), ratio(1, 1));
        assert_eq!(
            s_polynomial(&f, &m),
            Polynomial::term(p(1, 1).mul(&p(2, 0)), ratio(-1, 1))
        );
        assert!(!buchberger_criterion(&[f.clone(), m.clone()]));
        assert!(buchberger_criterion(&buchberger(&[f, m], Caps::default()).unwrap()));
    }

    #[test]
    fn criterion_detects_missing_element() {
        let f = minor(1, 2, 0, 2);
        let g = minor(1, 2, 1, 2);
        assert!(!buchberger_criterion(&[f.clone(), g.clone()]));
        let gb = buchberger(&[f, g], Caps::default()).unwrap();
        assert!(buchberger_criterion(&gb));
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn single_binomial_is_its_own_basis() {
        let f = minor(1, 2, 0, 1);
        assert_eq!(buchberger(std::slice::from_ref(&f), Caps::default()).unwrap(), vec![f.monic()]);
    }

    #[test]
    fn membership() {
        let f = minor(1, 2, 0, 1);
        let gb = buchberger(std::slice::from_ref(&f), Caps::default()).unwrap();
        assert!(ideal_membership(&f.mul_term(&p(1, 2), &ratio(3, 1)), &gb).unwrap());
        assert!(!ideal_membership(&Polynomial::constant(ratio(1, 1)), &gb).unwrap());
        let not_gb = [minor(1, 2, 0, 2), minor(1, 2, 1, 2)];
        assert!(matches!(ideal_membership(&f, &not_gb), Err(Error::Contract(_))));
    }

    #[test]
    fn caps_abort_cleanly() {
        let gens = [minor(1, 2, 0, 2), minor(1, 2, 1, 2)];
        let tiny = Caps { max_pairs: 0, max_terms: 10 };
        assert!(matches!(buchberger(&gens, tiny), Err(Error::Resource(_))));
    }

    #[test]
    fn bidegrees() {
        let m = p(1, 0).mul(&p(2, 1));
        let b = bidegree(&m, &L);
        assert_eq!(b.rows, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(b.cols, BTreeMap::from([(0, 1), (1, 1)]));
        assert!(is_bihomogeneous(&minor(1, 2, 0, 2), &L));
        assert!(!is_bihomogeneous(&Polynomial::binomial(p(1, 0), p(2, 0)), &L));
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        // <p11> ∩ <p12> = <p11 p12>
        let i = [Polynomial::var(L.var(1, 0))];
        let j = [Polynomial::var(L.var(1, 1))];
        let both = intersect_ideals(&i, &j, L.num_vars(), Caps::default()).unwrap();
        assert_eq!(both, vec![Polynomial::term(p(1, 0).mul(&p(1, 1)), ratio(1, 1))]);
    }

    #[test]
    fn render_format() {
        let f = minor(1, 2, 0, 1);
        assert_eq!(f.render(name), "p22*p11 - p21*p12");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = Polynomial> {
            proptest::collection::vec(
                (proptest::collection::vec((0u32..4, 1u32..3), 0..3), -3i64..4),
                1..4,
            )
            .prop_map(|terms| {
                Polynomial::from_terms(terms.into_iter().map(|(pw, c)| (Monomial::from_powers(pw), ratio(c, 1))))
            })
        }

        fn binomial_gen() -> impl Strategy<Value = Polynomial> {
            (0u32..2, 0u32..2, 0usize..3, 0usize..3).prop_map(|(a, b, x, y)| {
                let (i, j) = (a + 1, b + 1);
                minor(i, j, x, y)
            })
        }

        proptest! {
            #[test]
            fn reduce_is_idempotent_and_irreducible(f in small_poly(), basis in proptest::collection::vec(small_poly(), 1..3)) {
                let r = reduce(&f, &basis);
                prop_assert_eq!(reduce(&r, &basis), r.clone());
                for (m, _) in r.terms() {
                    for g in basis.iter().filter(|g| !g.is_zero()) {
                        prop_assert!(!g.leading_monomial().unwrap().divides(m));
                    }
                }
            }

            #[test]
            fn binomials_stay_binomials(gens in proptest::collection::vec(binomial_gen(), 1..4)) {
                let (gb, stats) = buchberger_with_stats(&gens, Caps::default()).unwrap();
                prop_assert_eq!(stats.non_binomial_remainders, 0);
                prop_assert!(gb.iter().all(|g| g.num_terms() <= 2));
                prop_assert!(buchberger_criterion(&gb));
                for g in &gens {
                    prop_assert!(reduce(g, &gb).is_zero());
                }
            }

            #[test]
            fn basis_is_independent_of_generator_order(mut gens in proptest::collection::vec(binomial_gen(), 1..4)) {
                let a = buchberger(&gens, Caps::default()).unwrap();
                gens.reverse();
                prop_assert_eq!(buchberger(&gens, Caps::default()).unwrap(), a);
            }
        }
    }
}
