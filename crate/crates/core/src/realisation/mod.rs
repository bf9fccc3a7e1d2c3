//! Points of the continuous realisation of a finite poset and their order.
//!
//! A point is a pair `(a, f)` where `a` is an element and `f` assigns to each
//! parent of `a` an exact rational in `(-1, 0]`. Only non-zero values are
//! stored, so the support of `f` is the key set of `coords`.

mod grid;
mod rational;

pub use grid::{Grid, GridSpec, DEFAULT_GRID_CAP};
pub use rational::{format_decimal, format_rational, parse_rational, Q};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::{Classification, DimBudget, Poset};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Values on parents of some element; absent keys mean 0.
pub type Coords = BTreeMap<usize, Q>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealPoint {
    pub base: usize,
    pub coords: Coords,
}

impl RealPoint {
    /// The point `(a, 0)`.
    pub fn at(base: usize) -> Self {
        RealPoint { base, coords: Coords::new() }
    }

    /// Validates values in `(-1, 0]` on parents of `base` and that the
    /// support has an ancestor. Zero values are dropped.
    pub fn new(p: &Poset, base: usize, coords: impl IntoIterator<Item = (usize, Q)>) -> Result<Self> {
        let mut out = Coords::new();
        for (x, v) in coords {
            if !p.parents(base).contains(&x) {
                return Err(Error::NotAParent(p.name(x).into(), p.name(base).into()));
            }
            if v <= -Q::one() || v > Q::zero() {
                return Err(Error::ValueOutOfRange { parent: p.name(x).into(), value: format_rational(v) });
            }
            if !v.is_zero() {
                out.insert(x, v);
            }
        }
        let support: Vec<usize> = out.keys().copied().collect();
        if !p.has_ancestor(&support) {
            return Err(Error::SupportNoAncestor(p.name(base).into()));
        }
        Ok(RealPoint { base, coords: out })
    }

    pub fn from_names(p: &Poset, base: &str, coords: &[(&str, Q)]) -> Result<Self> {
        let base = p.index_of(base)?;
        let coords = coords.iter().map(|(x, v)| Ok((p.index_of(x)?, *v))).collect::<Result<Vec<_>>>()?;
        RealPoint::new(p, base, coords)
    }

    pub fn value(&self, parent: usize) -> Q {
        self.coords.get(&parent).copied().unwrap_or_else(Q::zero)
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords.keys().copied().collect()
    }

    /// Canonical id: `base` or `base[p:-1/2;q:-1/4]` with parents sorted by id.
    pub fn encode(&self, p: &Poset) -> String {
        if self.coords.is_empty() {
            return p.name(self.base).to_string();
        }
        let mut pairs: Vec<(&str, Q)> = self.coords.iter().map(|(&x, &v)| (p.name(x), v)).collect();
        pairs.sort();
        let body: Vec<String> = pairs.iter().map(|(x, v)| format!("{x}:{}", format_rational(*v))).collect();
        format!("{}[{}]", p.name(self.base), body.join(";"))
    }

    /// Parses the canonical id; values may also be written as decimals.
    pub fn parse(p: &Poset, s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(base) = p.get(s) {
            return Ok(RealPoint::at(base));
        }
        let (base, body) = match (s.rfind('['), s.ends_with(']')) {
            (Some(i), true) => (&s[..i], &s[i + 1..s.len() - 1]),
            _ => return Err(Error::Parse(format!("`{s}` is neither an element nor `base[parent:value;...]`"))),
        };
        let base = p.index_of(base)?;
        let mut coords = Vec::new();
        for pair in body.split(';').filter(|t| !t.trim().is_empty()) {
            let (x, v) =
                pair.rsplit_once(':').ok_or_else(|| Error::Parse(format!("`{pair}` is not `parent:value`")))?;
            coords.push((p.index_of(x.trim())?, parse_rational(v)?));
        }
        RealPoint::new(p, base, coords)
    }
}

/// `T_{a<=b} f` on the parents of `b`: `-1` on `a`-dependent parents, the
/// minimum of `f` over parents of `a` below `x` on `a`-independent ones, and
/// `0` on `a`-inconsistent ones. `f` may take values in `[-1, 0]`.
pub fn translate(p: &Poset, a: usize, b: usize, f: &Coords) -> Result<Coords> {
    if !p.leq(a, b) {
        return Err(Error::NotRelated(p.name(a).into(), p.name(b).into()));
    }
    let mut out = Coords::new();
    for &x in p.parents(b) {
        let v = match p.classify(a, x) {
            Classification::Dependent => -Q::one(),
            Classification::Independent => p
                .parents(a)
                .iter()
                .filter(|&&y| p.leq(y, x))
                .map(|y| f.get(y).copied().unwrap_or_else(Q::zero))
                .min()
                .expect("independent parent has a parent of a below it"),
            Classification::Inconsistent => Q::zero(),
        };
        if !v.is_zero() {
            out.insert(x, v);
        }
    }
    Ok(out)
}

/// Order test through the translation: `a <= b` and `T_{a<=b} f <= g`.
pub fn real_leq_translation(p: &Poset, x: &RealPoint, y: &RealPoint) -> bool {
    let Ok(t) = translate(p, x.base, y.base, &x.coords) else {
        return false;
    };
    p.parents(y.base).iter().all(|&z| t.get(&z).copied().unwrap_or_else(Q::zero) <= y.value(z))
}

/// Order test through three conditions: `a <= b`, the support of `g` is
/// `a`-consistent, and on `a`-independent parents `z` of `b` the minimum of
/// `f` over parents of `a` below `z` is at most `g(z)`.
pub fn real_leq_conditions(p: &Poset, x: &RealPoint, y: &RealPoint) -> bool {
    let (a, b) = (x.base, y.base);
    if !p.leq(a, b) {
        return false;
    }
    if y.coords.keys().any(|&z| !p.classify(a, z).is_consistent()) {
        return false;
    }
    p.parents(b).iter().all(|&z| {
        if p.classify(a, z) != Classification::Independent {
            return true;
        }
        let m = p.parents(a).iter().filter(|&&w| p.leq(w, z)).map(|&w| x.value(w)).min();
        m.is_none_or(|m| m <= y.value(z))
    })
}

pub fn real_leq(p: &Poset, x: &RealPoint, y: &RealPoint) -> bool {
    let r = real_leq_conditions(p, x, y);
    debug_assert_eq!(r, real_leq_translation(p, x, y));
    r
}

/// The sup of `points` lying over a sup `b` of their bases: the pointwise
/// maximum of the translated coordinates.
pub fn real_sup_over(p: &Poset, points: &[RealPoint], b: usize) -> Result<RealPoint> {
    let bases: Vec<usize> = points.iter().map(|q| q.base).collect();
    if !p.sups(&bases).contains(&b) {
        return Err(Error::NotASup(p.name(b).into()));
    }
    let translated = points.iter().map(|q| translate(p, q.base, b, &q.coords)).collect::<Result<Vec<_>>>()?;
    let mut coords = Vec::new();
    for &x in p.parents(b) {
        let m = translated.iter().map(|t| t.get(&x).copied().unwrap_or_else(Q::zero)).max().unwrap_or_else(Q::zero);
        if m == -Q::one() {
            return Err(Error::CoordinateHitMinusOne(p.name(x).into()));
        }
        coords.push((x, m));
    }
    RealPoint::new(p, b, coords)
}

/// Largest `|S|` with `supp f <= S <= P(a)` and `S` having an ancestor.
pub fn real_dim(p: &Poset, point: &RealPoint, budget: DimBudget) -> Result<usize> {
    let ps = p.parents(point.base);
    if ps.len() > budget.max_parents {
        return Err(Error::SearchBudgetExceeded { size: ps.len(), budget: budget.max_parents });
    }
    let support = point.support();
    let rest: Vec<usize> = ps.iter().copied().filter(|x| !point.coords.contains_key(x)).collect();
    fn rec(p: &Poset, rest: &[usize], start: usize, size: usize, anc: &BitSet, best: &mut usize) {
        *best = (*best).max(size);
        for i in start..rest.len() {
            let next = anc.intersection(p.down_set(rest[i]));
            if !next.is_empty() {
                rec(p, rest, i + 1, size + 1, &next, best);
            }
        }
    }
    let anc = p.common_ancestors(&support);
    if anc.is_empty() {
        return Err(Error::SupportNoAncestor(p.name(point.base).into()));
    }
    let mut best = 0;
    rec(p, &rest, 0, support.len(), &anc, &mut best);
    Ok(best)
}

/// For a subposet of `N^r` whose ids are integer tuples `"i,j,..."` and whose
/// covers are unit steps, the image of a point under
/// `(a, f) -> a + sum_i f(a - e_i) e_i`.
pub fn nat_coordinates(p: &Poset, point: &RealPoint) -> Option<Vec<Q>> {
    let parse = |id: &str| -> Option<Vec<i64>> { id.split(',').map(|t| t.trim().parse().ok()).collect() };
    let base = parse(p.name(point.base))?;
    let mut out: Vec<Q> = base.iter().map(|&c| Q::from_integer(c)).collect();
    for &x in p.parents(point.base) {
        let px = parse(p.name(x))?;
        if px.len() != base.len() {
            return None;
        }
        let diffs: Vec<usize> = (0..base.len()).filter(|&i| px[i] != base[i]).collect();
        if diffs.len() != 1 || base[diffs[0]] - px[diffs[0]] != 1 {
            return None;
        }
        out[diffs[0]] += point.value(x);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{chain, chain_product, coordinate_poset};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    /// Five points of the plane where translations compose only laxly.
    fn lax_example() -> Poset {
        let pts = [("x", [0, 0]), ("a", [2, 0]), ("b", [3, 0]), ("y", [0, 2]), ("c", [3, 2])];
        coordinate_poset(&pts.map(|(n, c)| (n.to_string(), c.to_vec()))).unwrap()
    }

    #[test]
    fn translations_compose_laxly() {
        let p = lax_example();
        let id = |s: &str| p.index_of(s).unwrap();
        let (x, a, b, y, c) = (id("x"), id("a"), id("b"), id("y"), id("c"));
        assert_eq!(p.parents(c), &[b, y]);
        let f = Coords::from([(x, q(-1, 2))]);
        let tab = translate(&p, a, b, &f).unwrap();
        assert_eq!(tab, Coords::from([(a, -Q::one())]));
        let two_step = translate(&p, b, c, &tab).unwrap();
        assert_eq!(two_step, Coords::from([(b, -Q::one())]));
        let direct = translate(&p, a, c, &f).unwrap();
        assert_eq!(direct, Coords::from([(b, -Q::one()), (y, q(-1, 2))]));
        assert_eq!(p.classify(b, y), Classification::Inconsistent);
        assert_eq!(p.classify(c, y), Classification::Independent);
    }

    #[test]
    fn encode_parse_round_trip() {
        let p = chain_product(2, 2);
        let pt = RealPoint::from_names(&p, "1,1", &[("0,1", q(-7, 10)), ("1,0", q(-3, 10))]).unwrap();
        let s = pt.encode(&p);
        assert_eq!(s, "1,1[0,1:-7/10;1,0:-3/10]");
        assert_eq!(RealPoint::parse(&p, &s).unwrap(), pt);
        assert_eq!(RealPoint::parse(&p, "1,1[0,1:-0.7;1,0:-0.3]").unwrap(), pt);
        assert_eq!(nat_coordinates(&p, &pt).unwrap(), vec![q(3, 10), q(7, 10)]);
    }

    #[test]
    fn validation_errors() {
        let p = chain(1);
        assert!(matches!(RealPoint::from_names(&p, "1", &[("0", -Q::one())]), Err(Error::ValueOutOfRange { .. })));
        assert!(matches!(RealPoint::from_names(&p, "1", &[("0", q(1, 2))]), Err(Error::ValueOutOfRange { .. })));
        assert!(matches!(RealPoint::from_names(&p, "0", &[("1", q(-1, 2))]), Err(Error::NotAParent(..))));
        let two = crate::poset::suspension(&["u", "v"]).unwrap();
        let disc = two.subposet(&[1, 2, 3]).unwrap();
        assert!(matches!(
            RealPoint::from_names(&disc, "top", &[("u", q(-1, 2)), ("v", q(-1, 2))]),
            Err(Error::SupportNoAncestor(_))
        ));
    }

    #[test]
    fn sup_over_a_chain() {
        let p = chain(2);
        let lo = RealPoint::from_names(&p, "1", &[("0", q(-1, 3))]).unwrap();
        let s = real_sup_over(&p, std::slice::from_ref(&lo), 1).unwrap();
        assert_eq!(s, lo);
        assert!(matches!(real_sup_over(&p, std::slice::from_ref(&lo), 2), Err(Error::NotASup(_))));
    }

    #[test]
    fn real_dim_can_drop_below_par_dim() {
        let pts = [("e1", [1, 0, 0]), ("e12", [1, 1, 0]), ("e13", [1, 0, 1]), ("e23", [0, 1, 1]), ("t", [1, 1, 1])];
        let p = coordinate_poset(&pts.map(|(n, c)| (n.to_string(), c.to_vec()))).unwrap();
        let t = p.index_of("t").unwrap();
        assert_eq!(p.parents(t).len(), 3);
        assert_eq!(p.par_dim(t).unwrap(), 2);
        let pt = RealPoint::from_names(&p, "t", &[("e23", q(-1, 2))]).unwrap();
        assert_eq!(real_dim(&p, &pt, DimBudget::default()).unwrap(), 1);
        assert_eq!(real_dim(&p, &RealPoint::at(t), DimBudget::default()).unwrap(), 2);
    }
}
