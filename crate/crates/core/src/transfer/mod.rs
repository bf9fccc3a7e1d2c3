//! Transfers `f^!(a) = v (f <= a)` along poset maps, their properties, and
//! the fibres `(f <= a)`.
//!
//! Throughout, `None` stands for the adjoined minimum `-inf` of `I_*` and `J_*`.

pub mod kan;
pub mod tame;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::{MonotoneMap, Poset};

/// `f^!` as a table indexed by target elements.
pub fn transfer(f: &MonotoneMap) -> Result<Vec<Option<usize>>> {
    if !f.source.is_upper_semilattice() {
        return Err(Error::NotSemilattice);
    }
    Ok(f.target.elements().map(|a| f.source.join_all(&f.preimage_below(a))).collect())
}

fn leq_opt(p: &Poset, x: Option<usize>, y: Option<usize>) -> bool {
    match (x, y) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => p.leq(x, y),
    }
}

/// A transfer law that failed, with the first element where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    /// 1: `f_* f^! <= id`; 2: `f^!(a)` is the maximum of `(f_* <= a)`;
    /// 3: `f^! f_* f^! = f^!`; 4: `f_* f^! f_* = f_*`; 5: `f_* f^!(a)` is the
    /// minimum of its fibre; 6: equal fibres iff equal transfers;
    /// 7: injective maps give `f^! f_* = id`; 8: surjective maps give `f_* f^! = id`;
    /// 0: `id <= f^! f_*`.
    pub law: u8,
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct TransferReport {
    pub is_homomorphism: bool,
    pub transfer: Vec<Option<usize>>,
    pub failures: Vec<LawFailure>,
}

impl TransferReport {
    pub fn holds(&self, law: u8) -> bool {
        self.failures.iter().all(|f| f.law != law)
    }
}

/// Evaluates every transfer law on `I_*` and `J_*` and reports the first
/// counterexample of each.
pub fn check_transfer_laws(f: &MonotoneMap) -> Result<TransferReport> {
    let t = transfer(f)?;
    let (src, tgt) = (f.source, f.target);
    let is_homomorphism = f.is_homomorphism()?;
    let fs = |x: Option<usize>| x.map(|x| f.apply(x));
    let fr = |a: Option<usize>| a.and_then(|a| t[a]);
    let name_t = |a: Option<usize>| a.map_or("-inf".to_string(), |a| tgt.name(a).to_string());
    let name_s = |x: Option<usize>| x.map_or("-inf".to_string(), |x| src.name(x).to_string());
    let j_star: Vec<Option<usize>> = std::iter::once(None).chain(tgt.elements().map(Some)).collect();
    let i_star: Vec<Option<usize>> = std::iter::once(None).chain(src.elements().map(Some)).collect();
    let fibre = |a: Option<usize>| -> BitSet {
        match a {
            None => BitSet::new(src.len()),
            Some(a) => BitSet::from_iter(src.len(), f.preimage_below(a)),
        }
    };
    let fibres: Vec<BitSet> = j_star.iter().map(|&a| fibre(a)).collect();
    let mut failures = Vec::new();
    let mut fail = |law: u8, witness: String| {
        if !failures.iter().any(|f: &LawFailure| f.law == law) {
            failures.push(LawFailure { law, witness });
        }
    };
    for &x in &i_star {
        if !leq_opt(src, x, fr(fs(x))) {
            fail(0, name_s(x));
        }
    }
    for &a in &j_star {
        if !leq_opt(tgt, fs(fr(a)), a) {
            fail(1, name_t(a));
            fail(2, name_t(a));
        }
    }
    for &a in &j_star {
        if fr(fs(fr(a))) != fr(a) {
            fail(3, name_t(a));
        }
    }
    for &x in &i_star {
        if fs(fr(fs(x))) != fs(x) {
            fail(4, name_s(x));
        }
    }
    for (ia, &a) in j_star.iter().enumerate() {
        let m = fs(fr(a));
        let block: Vec<Option<usize>> =
            j_star.iter().enumerate().filter(|(ib, _)| fibres[*ib] == fibres[ia]).map(|(_, &b)| b).collect();
        if !block.contains(&m) || !block.iter().all(|&b| leq_opt(tgt, m, b)) {
            fail(5, name_t(a));
        }
    }
    for (ia, &a) in j_star.iter().enumerate().skip(1) {
        for (ib, &b) in j_star.iter().enumerate().skip(1) {
            if (fibres[ia] == fibres[ib]) != (fr(a) == fr(b)) {
                fail(6, format!("{} / {}", name_t(a), name_t(b)));
            }
        }
    }
    if f.is_injective() {
        for &x in &i_star {
            if fr(fs(x)) != x {
                fail(7, name_s(x));
            }
        }
    }
    if f.is_surjective() {
        for &a in &j_star {
            if fs(fr(a)) != a {
                fail(8, name_t(a));
            }
        }
    }
    failures.sort_by_key(|f| f.law);
    Ok(TransferReport { is_homomorphism, transfer: t, failures })
}

/// A block of target elements sharing the same `(f <= a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibre {
    pub members: Vec<usize>,
    pub preimage: Vec<usize>,
    pub minimum: Option<usize>,
}

/// Partition of the target by `(f <= a)`.
pub fn fibres(f: &MonotoneMap) -> Vec<Fibre> {
    let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for a in f.target.elements() {
        let pre = f.preimage_below(a);
        match blocks.iter_mut().find(|(p, _)| *p == pre) {
            Some((_, members)) => members.push(a),
            None => blocks.push((pre, vec![a])),
        }
    }
    blocks
        .into_iter()
        .map(|(preimage, members)| {
            let set = BitSet::from_iter(f.target.len(), members.iter().copied());
            Fibre { minimum: f.target.minimum_of(&set), members, preimage }
        })
        .collect()
}

/// A subset is convex if it contains everything between two of its members.
pub fn is_convex(p: &Poset, members: &[usize]) -> bool {
    let set = BitSet::from_iter(p.len(), members.iter().copied());
    members.iter().all(|&x| {
        members.iter().all(|&z| {
            let between = p.up_set(x).intersection(p.down_set(z));
            between.is_subset(&set)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{chain_product, MonotoneMap};

    #[test]
    fn doubling_square_breaks_the_counit() {
        let src = chain_product(1, 2);
        let tgt = chain_product(4, 2);
        let f = MonotoneMap::from_names(&src, &tgt, &[("0,0", "0,0"), ("1,0", "1,0"), ("0,1", "0,1"), ("1,1", "2,2")])
            .unwrap();
        let r = check_transfer_laws(&f).unwrap();
        assert!(!r.is_homomorphism);
        let law2 = r.failures.iter().find(|x| x.law == 2).unwrap();
        assert_eq!(law2.witness, "1,1");
        assert!(r.holds(0));
    }

    #[test]
    fn inclusion_of_a_square() {
        let src = chain_product(1, 2);
        let tgt = chain_product(3, 2);
        let f = MonotoneMap::inclusion(&src, &tgt).unwrap();
        let r = check_transfer_laws(&f).unwrap();
        assert!(r.is_homomorphism && r.failures.is_empty(), "{:?}", r.failures);
        let t = &r.transfer;
        assert_eq!(t[tgt.index_of("3,0").unwrap()], src.get("1,0"));
        for b in fibres(&f) {
            assert!(is_convex(&tgt, &b.members));
            let expected = b.preimage.iter().copied().reduce(|x, y| src.join(x, y).unwrap()).map(|j| f.apply(j));
            if !b.preimage.is_empty() {
                assert_eq!(b.minimum, expected);
            }
        }
    }
}
