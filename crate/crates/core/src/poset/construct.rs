//! Standard posets and constructions on posets.

use super::{CoverPolicy, Poset};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// The chain `[n] = {0 < 1 < ... < n}` with ids `"0"..="n"`.
pub fn chain(n: usize) -> Poset {
    let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> = (0..n).map(|i| (names[i].clone(), names[i + 1].clone())).collect();
    Poset::new(&names, &covers, CoverPolicy::Reject).expect("chain is a valid poset")
}

/// The product `[n]^r` with ids `"i,j,..."` and componentwise order.
pub fn chain_product(n: usize, r: usize) -> Poset {
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..r {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=n as i64).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    let named: Vec<(String, Vec<i64>)> =
        points.into_iter().map(|p| (p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","), p)).collect();
    coordinate_poset(&named).expect("lattice points are distinct")
}

/// A finite set of points in `Z^r` (or any scaled copy) ordered coordinatewise.
pub fn coordinate_poset(points: &[(String, Vec<i64>)]) -> Result<Poset> {
    let names = points.iter().map(|(n, _)| n.clone()).collect();
    Poset::from_order(names, |i, j| points[i].1.iter().zip(&points[j].1).all(|(a, b)| a <= b))
}

/// Product order on `P x Q` with ids `"x,y"`.
pub fn product_poset(p: &Poset, q: &Poset) -> Poset {
    let pairs: Vec<(usize, usize)> = p.elements().flat_map(|x| q.elements().map(move |y| (x, y))).collect();
    let names = pairs.iter().map(|&(x, y)| format!("{},{}", p.name(x), q.name(y))).collect();
    Poset::from_order(names, |i, j| {
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        p.leq(a, c) && q.leq(b, d)
    })
    .expect("product of posets is a poset")
}

/// Subsets of `s` ordered by inclusion, with ids like `"{}"` and `"{a,b}"`.
pub fn discrete_cube<S: AsRef<str>>(s: &[S]) -> Poset {
    let k = s.len();
    let name = |mask: usize| {
        let parts: Vec<&str> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i].as_ref()).collect();
        format!("{{{}}}", parts.join(","))
    };
    let names = (0..1usize << k).map(name).collect();
    Poset::from_order(names, |i, j| i & !j == 0).expect("subset lattice is a poset")
}

pub const SUSPENSION_BOTTOM: &str = "bottom";
pub const SUSPENSION_TOP: &str = "top";

/// The discrete set `s` with a new global minimum `"bottom"` and maximum `"top"`.
pub fn suspension<S: AsRef<str>>(s: &[S]) -> Result<Poset> {
    let mut names: Vec<String> = vec![SUSPENSION_BOTTOM.into()];
    names.extend(s.iter().map(|x| x.as_ref().to_string()));
    names.push(SUSPENSION_TOP.into());
    let mut covers = Vec::new();
    for x in s {
        covers.push((SUSPENSION_BOTTOM.to_string(), x.as_ref().to_string()));
        covers.push((x.as_ref().to_string(), SUSPENSION_TOP.to_string()));
    }
    if s.is_empty() {
        covers.push((SUSPENSION_BOTTOM.into(), SUSPENSION_TOP.into()));
    }
    Poset::new(&names, &covers, CoverPolicy::Reject)
}

pub const ADJOINED_MIN: &str = "-inf";

/// `P` with a new global minimum, named `"-inf"` (padded with `_` if taken).
pub fn adjoin_min(p: &Poset) -> Poset {
    let mut bottom = ADJOINED_MIN.to_string();
    while p.get(&bottom).is_some() {
        bottom.push('_');
    }
    let mut names = vec![bottom];
    names.extend(p.names().iter().cloned());
    Poset::from_order(names, |i, j| i == 0 || (j != 0 && p.leq(i - 1, j - 1)))
        .expect("adjoining a minimum keeps a poset")
}

/// `U` together with the joins of all its non-empty subsets.
pub fn sublattice_generated(p: &Poset, u: &[usize]) -> Result<Vec<usize>> {
    if !p.is_upper_semilattice() {
        return Err(Error::NotSemilattice);
    }
    let mut set = BitSet::from_iter(p.len(), u.iter().copied());
    let mut frontier: Vec<usize> = set.iter().collect();
    while !frontier.is_empty() {
        let current: Vec<usize> = set.iter().collect();
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in &current {
                let j = p.join(x, y).expect("semilattice has joins");
                if !set.contains(j) {
                    set.insert(j);
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(set.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_ids() {
        assert_eq!(chain(3).len(), 4);
        let g = chain_product(2, 2);
        assert_eq!(g.len(), 9);
        assert_eq!(g.parents(g.index_of("1,1").unwrap()).len(), 2);
        let cube = discrete_cube(&["a", "b", "c"]);
        assert_eq!(cube.len(), 8);
        assert_eq!(cube.parents(cube.index_of("{a,b,c}").unwrap()).len(), 3);
        let s = suspension(&["x", "y", "z"]).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.global_min(), s.get("bottom"));
        let p = product_poset(&chain(1), &chain(2));
        assert_eq!(p.len(), 6);
        assert!(p.get("1,2").is_some());
    }

    #[test]
    fn adjoining_a_minimum() {
        let s = Poset::new(&["a", "b"], &[] as &[(&str, &str)], CoverPolicy::Reject).unwrap();
        let m = adjoin_min(&s);
        assert_eq!(m.global_min(), Some(0));
        assert_eq!(m.name(0), "-inf");
        assert!(!m.comparable(1, 2));
    }

    #[test]
    fn generated_sublattice() {
        let cube = discrete_cube(&["a", "b", "c"]);
        let a = cube.index_of("{a}").unwrap();
        let b = cube.index_of("{b}").unwrap();
        let gen = sublattice_generated(&cube, &[a, b]).unwrap();
        let names: Vec<&str> = gen.iter().map(|&x| cube.name(x)).collect();
        assert_eq!(names, vec!["{a}", "{b}", "{a,b}"]);
        let two = Poset::new(&["a", "b"], &[] as &[(&str, &str)], CoverPolicy::Reject).unwrap();
        assert!(matches!(sublattice_generated(&two, &[0]), Err(Error::NotSemilattice)));
    }
}
