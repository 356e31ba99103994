//! Coset-sum obstructions for commutators.
//!
//! The exponent vectors of `a` and `b` span a subgroup `L` of Z², and all
//! coset sums of `W([a,b])` over `L` equal the orientation sign ι of the
//! pair — `+1`, `−1`, or `0`. Consequently the signed area of a commutator
//! invariant is `ι · [Z² : L]`, which pins down the admissible lattices and
//! makes "is this polynomial the invariant of a commutator" a finite search
//! over Hermite-normal-form sublattices and support-difference directions.
//!
//! The module also decides divisibility by products of `X^nY^m − 1`
//! (membership of `[a₁, …, a_k, u]`-type elements) and lower-central-series
//! membership modulo the second derived subgroup, with constructive
//! decompositions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::invariant::winding_invariant;
use crate::laurent::{big, LPoly};
use crate::words::Word;

/// A subgroup of Z² in Hermite normal form.
///
/// Rank 2 is stored with column generators `(a, 0)` and `(b, d)` where
/// `a, d >= 1` and `0 <= b < a`; rank 1 keeps a single generator with
/// positive leading coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lattice {
    Rank0,
    Rank1 { gen: (i64, i64) },
    Rank2 { a: i64, b: i64, d: i64 },
}

fn normalize_dir((x, y): (i64, i64)) -> (i64, i64) {
    if x > 0 || (x == 0 && y > 0) {
        (x, y)
    } else {
        (-x, -y)
    }
}

impl Lattice {
    /// The subgroup generated by two vectors.
    pub fn from_generators(v1: (i64, i64), v2: (i64, i64)) -> Lattice {
        let det = v1.0 * v2.1 - v1.1 * v2.0;
        if det != 0 {
            // Column reduction: euclidean algorithm on the y-components.
            let (mut c1, mut c2) = (v1, v2);
            while c1.1 != 0 {
                let q = c2.1.div_euclid(c1.1);
                c2 = (c2.0 - q * c1.0, c2.1 - q * c1.1);
                std::mem::swap(&mut c1, &mut c2);
            }
            let a = c1.0.abs();
            let d = c2.1.abs();
            let b = c2.0.rem_euclid(a);
            return Lattice::Rank2 { a, b, d };
        }
        match (v1, v2) {
            ((0, 0), (0, 0)) => Lattice::Rank0,
            ((0, 0), v) | (v, (0, 0)) => Lattice::Rank1 { gen: normalize_dir(v) },
            _ => {
                let g1 = v1.0.gcd(&v1.1);
                let u = (v1.0 / g1, v1.1 / g1);
                let s1 = if u.0 != 0 { v1.0 / u.0 } else { v1.1 / u.1 };
                let s2 = if u.0 != 0 { v2.0 / u.0 } else { v2.1 / u.1 };
                let s = s1.gcd(&s2);
                Lattice::Rank1 { gen: normalize_dir((u.0 * s, u.1 * s)) }
            }
        }
    }

    pub fn rank(&self) -> u8 {
        match self {
            Lattice::Rank0 => 0,
            Lattice::Rank1 { .. } => 1,
            Lattice::Rank2 { .. } => 2,
        }
    }

    /// `[Z² : L]` when finite.
    pub fn index(&self) -> Option<i64> {
        match self {
            Lattice::Rank2 { a, d, .. } => Some(a * d),
            _ => None,
        }
    }

    pub fn contains(&self, (u, v): (i64, i64)) -> bool {
        match *self {
            Lattice::Rank0 => (u, v) == (0, 0),
            Lattice::Rank1 { gen: (p, q) } => {
                if p == 0 {
                    u == 0 && v.rem_euclid(q) == 0
                } else if u % p != 0 {
                    false
                } else {
                    v == (u / p) * q
                }
            }
            Lattice::Rank2 { a, b, d } => {
                // columns (a, 0), (b, d): v = j d, u = i a + j b
                if v.rem_euclid(d) != 0 {
                    return false;
                }
                (u - (v / d) * b).rem_euclid(a) == 0
            }
        }
    }

    /// Canonical coset representative of a point.
    pub fn coset_of(&self, (u, v): (i64, i64)) -> (i64, i64) {
        match *self {
            Lattice::Rank0 => (u, v),
            Lattice::Rank1 { gen: (p, q) } => {
                if p == 0 {
                    (u, v.rem_euclid(q))
                } else {
                    let t = u.div_euclid(p);
                    (u - t * p, v - t * q)
                }
            }
            Lattice::Rank2 { a, b, d } => {
                let s = v.rem_euclid(d);
                let j = (v - s) / d;
                let r = (u - j * b).rem_euclid(a);
                (r, s)
            }
        }
    }

    /// All rank-2 sublattices of a given index, in deterministic order.
    pub fn enumerate_index(n: i64) -> Vec<Lattice> {
        assert!(n >= 1);
        let mut out = Vec::new();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let a = n / d;
            for b in 0..a {
                out.push(Lattice::Rank2 { a, b, d });
            }
        }
        out
    }

    /// Sum of the coefficients of `p` over the coset `base + L`.
    pub fn coset_sum(&self, p: &LPoly, base: (i64, i64)) -> BigInt {
        let target = self.coset_of(base);
        let mut acc = BigInt::zero();
        for ((i, j), c) in p.terms() {
            if self.coset_of((i, j)) == target {
                acc += c;
            }
        }
        acc
    }

    /// Grouped coset sums of the support of `p`.
    pub fn support_coset_sums(&self, p: &LPoly) -> BTreeMap<(i64, i64), BigInt> {
        let mut sums: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for ((i, j), c) in p.terms() {
            *sums.entry(self.coset_of((i, j))).or_insert_with(BigInt::zero) += c;
        }
        sums
    }
}

/// The orientation sign of the exponent-vector parallelogram of `[a, b]`.
pub fn iota(a: &Word, b: &Word) -> i8 {
    let va = a.exponent_vector();
    let vb = b.exponent_vector();
    let det = va.0 * vb.1 - va.1 * vb.0;
    det.signum() as i8
}

/// Outcome of a coset-sum obstruction test.
///
/// `Obstructed` is definitive; `Inconclusive` only reports an admissible
/// lattice and ι value, never realizability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionVerdict {
    Obstructed,
    Inconclusive { lattice: Lattice, iota: i8 },
}

impl ObstructionVerdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, ObstructionVerdict::Obstructed)
    }
}

/// Rank-1 direction candidates: for every difference `d` of two support
/// points, every vector `v` with `d ∈ Zv` (i.e. `d / k` for the divisors
/// `k` of the content of `d`).
pub(crate) fn line_candidate_directions(points: &[(i64, i64)]) -> BTreeSet<(i64, i64)> {
    let mut dirs = BTreeSet::new();
    for (idx, &p) in points.iter().enumerate() {
        for &q in &points[idx + 1..] {
            let d = (q.0 - p.0, q.1 - p.1);
            let g = d.0.gcd(&d.1);
            let u = (d.0 / g, d.1 / g);
            for k in 1..=g {
                if g % k == 0 {
                    dirs.insert(normalize_dir((u.0 * k, u.1 * k)));
                }
            }
        }
    }
    dirs
}

fn divisors_constraint_ok(l: &Lattice, must_contain: &[(i64, i64)]) -> bool {
    must_contain.iter().all(|&v| l.contains(v))
}

/// Decides whether some subgroup `L ⊇ must_contain` and `ι ∈ {−1,0,1}`
/// make every coset sum of `p` equal to `ι`.
///
/// When the signed area `s` is nonzero, `ι = sign(s)` and `L` must have
/// index `|s|`; when `s = 0`, `ι = 0` and `L` has rank at most 1 with all
/// line-coset sums vanishing. `Obstructed` therefore means `p` is not the
/// invariant of any commutator with the prescribed exponent vectors,
/// whether in the free group or the free metabelian group.
pub fn commutator_obstruction(p: &LPoly, must_contain: &[(i64, i64)]) -> ObstructionVerdict {
    let s = p.area();
    if s.is_zero() {
        if p.is_zero() {
            let witness = match must_contain.iter().find(|&&v| v != (0, 0)) {
                None => Lattice::Rank0,
                Some(&v) => Lattice::Rank1 { gen: normalize_dir(v) },
            };
            return ObstructionVerdict::Inconclusive { lattice: witness, iota: 0 };
        }
        let points: Vec<(i64, i64)> = p.support().collect();
        for gen in line_candidate_directions(&points) {
            let l = Lattice::Rank1 { gen };
            if !divisors_constraint_ok(&l, must_contain) {
                continue;
            }
            if l.support_coset_sums(p).values().all(|v| v.is_zero()) {
                return ObstructionVerdict::Inconclusive { lattice: l, iota: 0 };
            }
        }
        return ObstructionVerdict::Obstructed;
    }
    let iota_val: i8 = if s.is_positive() { 1 } else { -1 };
    let index: i64 = match s.abs().try_into() {
        Ok(v) => v,
        Err(_) => return ObstructionVerdict::Obstructed,
    };
    let target = big(iota_val as i64);
    for l in Lattice::enumerate_index(index) {
        if !divisors_constraint_ok(&l, must_contain) {
            continue;
        }
        let sums = l.support_coset_sums(p);
        // every one of the `index` cosets must sum to ι, so every coset must
        // meet the support
        if sums.len() as i64 == index && sums.values().all(|v| *v == target) {
            return ObstructionVerdict::Inconclusive { lattice: l, iota: iota_val };
        }
    }
    ObstructionVerdict::Obstructed
}

/// Obstruction for `p = W([a², b])`: some `(n, m)` with `1 + X^nY^m`
/// dividing `p` (or `(0,0)` when `2 | p`) must make `p` commutator
/// admissible with `(2n, 2m)` in the lattice.
pub fn ab_squared_obstruction(p: &LPoly) -> ObstructionVerdict {
    let (wx, wy) = p.widths();
    let mut candidates: Vec<(i64, i64)> = Vec::new();
    if p.divide_by_int(&big(2)).is_some() {
        candidates.push((0, 0));
    }
    for n in 0..=wx {
        for m in -wy..=wy {
            if (n, m) == (0, 0) || (n == 0 && m < 0) {
                continue; // half-plane: (n,m) and (−n,−m) give the same test
            }
            let divisor = &LPoly::one() + &LPoly::monomial(n, m);
            match p.exact_divide(&divisor) {
                Ok(Some(_)) => candidates.push((n, m)),
                _ => {}
            }
        }
    }
    for (n, m) in candidates {
        if let ObstructionVerdict::Inconclusive { lattice, iota } =
            commutator_obstruction(p, &[(2 * n, 2 * m)])
        {
            return ObstructionVerdict::Inconclusive { lattice, iota };
        }
    }
    ObstructionVerdict::Obstructed
}

/// Complete decision of `(M₁−1)(M₂−1)…(M_k−1) | p` over monomials `Mᵢ`:
/// equivalently, solvability of `w = [a₁, …, a_k, u]` in the free
/// metabelian group with `u` in the derived subgroup.
///
/// Rejects early unless all Taylor coefficients of total order `< k`
/// vanish, then searches factor by factor within the support widths.
pub fn simple_commutator_decide(p: &LPoly, k: u32) -> Result<Option<(Vec<(i64, i64)>, LPoly)>> {
    if k < 1 {
        return Err(Error::InvalidParameter("commutator weight must be >= 1".into()));
    }
    if p.is_zero() {
        return Ok(Some((vec![(0, 0); k as usize], LPoly::zero())));
    }
    let taylor = p.taylor_coefficients();
    if taylor.iter().any(|(&(i, j), c)| i + j <= k - 1 && !c.is_zero()) {
        return Ok(None);
    }
    fn search(p: &LPoly, k: u32, acc: &mut Vec<(i64, i64)>) -> Option<LPoly> {
        if k == 0 {
            return Some(p.clone());
        }
        let (wx, wy) = p.widths();
        let mut cands = Vec::new();
        for n in -wx..=wx {
            for m in -wy..=wy {
                if (n, m) != (0, 0) {
                    cands.push((n, m));
                }
            }
        }
        cands.sort_by_key(|&(n, m)| {
            (n.abs() + m.abs(), std::cmp::Reverse(n), std::cmp::Reverse(m))
        });
        for (n, m) in cands {
            let divisor = &LPoly::monomial(n, m) - &LPoly::one();
            if let Ok(Some(q)) = p.exact_divide(&divisor) {
                acc.push((n, m));
                if let Some(rest) = search(&q, k - 1, acc) {
                    return Some(rest);
                }
                acc.pop();
            }
        }
        None
    }
    let mut monomials = Vec::new();
    Ok(search(p, k, &mut monomials).map(|rest| (monomials, rest)))
}

/// A decomposition `P = Σ_p Q_p (X−1)^p (Y−1)^{m−2−p}` certifying
/// membership in `γ_m` modulo the second derived subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimsDecomposition {
    pub weight: u32,
    /// `(Q_p, p)` pairs with `Q_p` a Laurent polynomial.
    pub parts: Vec<(LPoly, u32)>,
}

impl SimsDecomposition {
    /// Re-multiplies the decomposition.
    pub fn recompose(&self) -> LPoly {
        let mut acc = LPoly::zero();
        for (q, p) in &self.parts {
            let factor = LPoly::xy_shift_power(*p, self.weight - 2 - *p);
            acc = &acc + &(q * &factor);
        }
        acc
    }
}

/// Membership of `w` in `γ_m(F₂)` modulo the second derived subgroup:
/// true iff all normalized Taylor coefficients of total order `<= m−3`
/// vanish; on success also returns the regrouped decomposition into
/// multiples of `(X−1)^p (Y−1)^{m−2−p}`.
pub fn gamma_membership_mod_second_derived(
    w: &Word,
    m: u32,
) -> Result<Option<SimsDecomposition>> {
    if m < 2 {
        return Err(Error::InvalidParameter("lower central weight must be >= 2".into()));
    }
    let p = winding_invariant(w)?;
    let (_, (si, sj)) = p.normalized();
    let taylor = p.taylor_coefficients();
    if m >= 3 && taylor.iter().any(|(&(i, j), _)| i + j <= m - 3) {
        return Ok(None);
    }
    // Assign each Taylor term (of order >= m−2) to a bucket l + s = m−2.
    let mut buckets: BTreeMap<u32, LPoly> = BTreeMap::new();
    for ((i, j), c) in taylor {
        let l = i.min(m - 2);
        let s = m - 2 - l;
        debug_assert!(s <= j);
        let extra = &LPoly::xy_shift_power(i - l, j - s).scale(&c);
        let entry = buckets.entry(l).or_insert_with(LPoly::zero);
        *entry = &*entry + extra;
    }
    // undo the normalization shift: P = X^{-si}Y^{-sj} * normalized(P)
    let parts: Vec<(LPoly, u32)> = buckets
        .into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(l, q)| (q.mul_monomial(-si, -sj), l))
        .collect();
    let decomposition = SimsDecomposition { weight: m, parts };
    debug_assert_eq!(decomposition.recompose(), p);
    Ok(Some(decomposition))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn p(s: &str) -> LPoly {
        LPoly::parse(s).unwrap()
    }

    #[test]
    fn lattice_from_generators() {
        assert_eq!(
            Lattice::from_generators((1, 0), (0, 1)),
            Lattice::Rank2 { a: 1, b: 0, d: 1 }
        );
        assert_eq!(Lattice::from_generators((0, 0), (0, 0)), Lattice::Rank0);
        assert_eq!(
            Lattice::from_generators((2, 4), (3, 6)),
            Lattice::Rank1 { gen: (1, 2) }
        );
        assert_eq!(
            Lattice::from_generators((-1, -2), (0, 0)),
            Lattice::Rank1 { gen: (1, 2) }
        );
        let l = Lattice::from_generators((2, 1), (0, 3));
        assert_eq!(l.index(), Some(6));
        assert!(l.contains((2, 1)));
        assert!(l.contains((0, 3)));
        assert!(l.contains((2, 4)));
        assert!(!l.contains((1, 1)));
    }

    #[test]
    fn lattice_enumeration_count() {
        // number of index-n sublattices is the divisor sum
        for (n, sigma) in [(1i64, 1usize), (2, 3), (4, 7), (6, 12)] {
            assert_eq!(Lattice::enumerate_index(n).len(), sigma);
        }
    }

    #[test]
    fn coset_of_is_stable() {
        let l = Lattice::Rank2 { a: 3, b: 1, d: 2 };
        for u in -5..5 {
            for v in -5..5 {
                let rep = l.coset_of((u, v));
                assert!(l.contains((u - rep.0, v - rep.1)), "({u},{v})");
                assert_eq!(l.coset_of(rep), rep);
            }
        }
        let l = Lattice::Rank1 { gen: (2, 3) };
        for u in -6..6 {
            for v in -6..6 {
                let rep = l.coset_of((u, v));
                assert!(l.contains((u - rep.0, v - rep.1)));
            }
        }
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota(&Word::x(), &Word::y()), 1);
        assert_eq!(iota(&Word::x(), &w("x^2")), 0);
        assert_eq!(iota(&Word::y(), &Word::x()), -1);
    }

    #[test]
    fn obstruction_golden_set() {
        assert!(commutator_obstruction(&p("1 + X^2*Y^2"), &[]).is_obstructed());
        assert!(commutator_obstruction(&p("1 - X*Y + X^2*Y^2 + X^3*Y^3"), &[]).is_obstructed());
        assert!(commutator_obstruction(&p("2 + 2*X - Y"), &[]).is_obstructed());
        assert!(!commutator_obstruction(&LPoly::one(), &[]).is_obstructed());
        assert!(commutator_obstruction(&p("1 + X"), &[(1, 0)]).is_obstructed());
    }

    #[test]
    fn obstruction_accepts_genuine_commutators() {
        for (a, b) in [("x", "y"), ("x^2", "y"), ("x^2Y", "yxy"), ("xy", "XY^2")] {
            let c = Word::commutator(&w(a), &w(b));
            let inv = winding_invariant(&c).unwrap();
            let verdict = commutator_obstruction(&inv, &[w(a).exponent_vector(), w(b).exponent_vector()]);
            assert!(!verdict.is_obstructed(), "[{a},{b}]");
        }
    }

    #[test]
    fn rank1_scaled_directions_are_searched() {
        // line sums vanish for <(1,0)> but (1,0) is not a support difference
        let q = p("1 + X^2 - 2*X^5");
        assert!(!commutator_obstruction(&q, &[]).is_obstructed());
    }

    #[test]
    fn ab_squared_examples() {
        let ce = &p("1 - X^-1") * &p("1 + Y^-1");
        assert!(ab_squared_obstruction(&ce).is_obstructed());
        assert!(!ab_squared_obstruction(&p("1 + X")).is_obstructed());
        assert!(ab_squared_obstruction(&p("2")).is_obstructed());
        assert!(!ab_squared_obstruction(&LPoly::zero()).is_obstructed());
    }

    #[test]
    fn simple_commutator_examples() {
        let q = &p("X - 1") * &p("1 + X^2");
        let (ms, _) = simple_commutator_decide(&q, 1).unwrap().unwrap();
        assert_eq!(ms, vec![(1, 0)]);
        assert_eq!(simple_commutator_decide(&q, 2).unwrap(), None);
        let q = &p("X - 1") * &p("Y - 1");
        let (ms, rest) = simple_commutator_decide(&q, 2).unwrap().unwrap();
        assert_eq!(ms, vec![(1, 0), (0, 1)]);
        assert_eq!(rest, LPoly::one());
    }

    #[test]
    fn gamma_membership_examples() {
        assert!(gamma_membership_mod_second_derived(&Word::engel(3).unwrap(), 4)
            .unwrap()
            .is_some());
        assert!(gamma_membership_mod_second_derived(&w("xyXY"), 3)
            .unwrap()
            .is_none());
        let z = crate::invariant::word_from_polynomial(&p("X^3 - 1"));
        let d = gamma_membership_mod_second_derived(&z, 3).unwrap().unwrap();
        assert_eq!(d.recompose(), p("X^3 - 1"));
    }

    #[test]
    fn gamma_membership_weight_two_is_trivial() {
        let z = w("x^2yX^2Y");
        let d = gamma_membership_mod_second_derived(&z, 2).unwrap().unwrap();
        assert_eq!(d.recompose(), winding_invariant(&z).unwrap());
    }
}
