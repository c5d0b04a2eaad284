//! Degeneracy classes by exact energy and their hidden-symmetry orbits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::hidden::{hidden_operator, HiddenDirection};
use super::{q_int, FockBasis, InteriorMask, PRUNE};
use crate::coupling::{Coupling, HiddenKind, Strength};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::Q;

/// `ell1 n1 + ell2 n2 + 1`, the energy in units of `hbar omega`.
pub fn energy_exact(c: &Coupling, n1: usize, n2: usize) -> Q {
    c.ell1() * q_int(n1) + c.ell2() * q_int(n2) + Q::one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassExtent {
    /// The whole level fits inside the basis.
    Finite,
    /// A finite level that the cutoff clips.
    Truncated,
    /// An infinitely degenerate level (`|g| >= 1`); only the part inside the basis is listed.
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegeneracyClass {
    pub id: usize,
    #[serde(skip)]
    pub energy: Q,
    /// Sorted by ascending `n1`.
    pub members: Vec<(usize, usize)>,
    pub extent: ClassExtent,
}

/// Number of solutions of `ell1 n1 + ell2 n2 = e - 1` with `n_i >= 0`, and whether
/// any of them lies outside the basis. Only called with both weights positive.
fn full_level(c: &Coupling, e: Q, cutoff: usize) -> (usize, bool) {
    let rhs = e - Q::one();
    let (l1, l2) = c.ells();
    let mut count = 0;
    let mut outside = false;
    let mut n1 = 0usize;
    while l1 * q_int(n1) <= rhs {
        let r = (rhs - l1 * q_int(n1)) / l2;
        if r.is_integer() {
            count += 1;
            if n1 > cutoff || *r.numer() as usize > cutoff {
                outside = true;
            }
        }
        n1 += 1;
    }
    (count, outside)
}

/// Basis states grouped by exact energy, ordered by energy; `window` keeps levels with
/// `lo <= E <= hi` in units of `hbar omega`.
pub fn degeneracy_classes(strength: &Strength, window: Option<(Q, Q)>, basis: FockBasis) -> Result<Vec<DegeneracyClass>> {
    let c = match strength {
        Strength::Rational(c) => *c,
        Strength::Irrational(g) => return Err(Error::InvalidParameter(format!("degeneracy classes need a rational coupling, got {}", g))),
        Strength::IsotropicMink { .. } => return Err(Error::Unsupported("degeneracy classes in the isotropic limit".into())),
    };
    let mut levels: BTreeMap<Q, Vec<(usize, usize)>> = BTreeMap::new();
    for (n1, n2) in basis.states() {
        let e = energy_exact(&c, n1, n2);
        if let Some((lo, hi)) = window {
            if e < lo || e > hi {
                continue;
            }
        }
        levels.entry(e).or_default().push((n1, n2));
    }
    let bounded = c.g().abs() < Q::one();
    Ok(levels
        .into_iter()
        .enumerate()
        .map(|(id, (energy, members))| {
            let extent = if !bounded {
                ClassExtent::Infinite
            } else {
                let (count, outside) = full_level(&c, energy, basis.cutoff());
                if outside || count != members.len() {
                    ClassExtent::Truncated
                } else {
                    ClassExtent::Finite
                }
            };
            DegeneracyClass { id, energy, members, extent }
        })
        .collect())
}

/// Connected components of the graph whose edges are the nonzero matrix elements of the
/// raising hidden operator between states of `mask`. Components are sorted by their first member.
pub fn hidden_orbits(basis: FockBasis, c: &Coupling, mask: &InteriorMask) -> Result<Vec<Vec<(usize, usize)>>> {
    let h = c.hidden();
    let op = hidden_operator(basis, c, h.kind, h.s1, h.s2, HiddenDirection::Plus)?;
    let states: Vec<(usize, usize)> = basis.states().filter(|&(a, b)| mask.contains(&basis, a, b)).collect();
    let index: BTreeMap<(usize, usize), usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut parent: Vec<usize> = (0..states.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, s) in states.iter().enumerate() {
        for (t, v) in op.apply_state(s.0, s.1) {
            if v.norm() <= PRUNE {
                continue;
            }
            if let Some(&j) = index.get(&t) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..states.len() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(states[i]);
    }
    let mut out: Vec<Vec<(usize, usize)>> = comps.into_values().collect();
    for o in &mut out {
        o.sort();
    }
    out.sort();
    Ok(out)
}

/// Degeneracy classes restricted to the mask coincide with the hidden orbits there.
pub fn verify_degeneracy_orbits(basis: FockBasis, c: &Coupling, mask: &InteriorMask) -> Result<Report> {
    let h = c.hidden();
    if (h.kind == HiddenKind::L && (h.s1 == 0 || h.s2 == 0)) || (c.ell1().is_zero() || c.ell2().is_zero()) {
        return Err(Error::Unsupported(format!("no hidden ladder pair at g = {}", c.g())));
    }
    let classes = degeneracy_classes(&Strength::Rational(*c), None, basis)?;
    let mut from_classes: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for cl in &classes {
        let mut m: Vec<(usize, usize)> = cl.members.iter().copied().filter(|&(a, b)| mask.contains(&basis, a, b)).collect();
        if !m.is_empty() {
            m.sort();
            from_classes.insert(m);
        }
    }
    let orbits: BTreeSet<Vec<(usize, usize)>> = hidden_orbits(basis, c, mask)?.into_iter().collect();
    let diff = from_classes.symmetric_difference(&orbits).count();
    let name = match h.kind {
        HiddenKind::L => format!("classes = orbits of L({},{}) at g={}", h.s1, h.s2, c.g()),
        HiddenKind::J => format!("classes = orbits of J({},{}) at g={}", h.s1, h.s2, c.g()),
    };
    let mut rep = Report::new(name.clone());
    rep.push(
        Check::exact(name, format!("{} classes", from_classes.len()), format!("{} orbits", orbits.len()), diff as f64)
            .with_anchor("degeneracy-orbits"),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn class_at(cl: &[DegeneracyClass], e: Q) -> &DegeneracyClass {
        cl.iter().find(|c| c.energy == e).unwrap()
    }

    #[test]
    fn examples() {
        let b = FockBasis::new(12).unwrap();
        let cl = degeneracy_classes(&Coupling::new(q(1, 3)).into(), None, b).unwrap();
        let c = class_at(&cl, q(7, 3));
        assert_eq!(c.members, alloc::vec![(0, 2), (1, 0)]);
        assert_eq!(c.extent, ClassExtent::Finite);

        let cl = degeneracy_classes(&Coupling::zero().into(), None, b).unwrap();
        assert_eq!(class_at(&cl, qi(3)).members, alloc::vec![(0, 2), (1, 1), (2, 0)]);

        let cl = degeneracy_classes(&Coupling::new(qi(3)).into(), Some((qi(1), qi(1))), b).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(&cl[0].members[..3], &[(0, 0), (1, 2), (2, 4)]);
        assert_eq!(cl[0].extent, ClassExtent::Infinite);
    }

    #[test]
    fn irrational_rejected() {
        let b = FockBasis::new(4).unwrap();
        assert!(degeneracy_classes(&Strength::Irrational(0.7071067811865476), None, b).is_err());
    }

    #[test]
    fn orbits_match_classes() {
        let b = FockBasis::new(12).unwrap();
        for g in [q(1, 3), qi(3), qi(0), q(-1, 2), q(-5, 3)] {
            let c = Coupling::new(g);
            let r = verify_degeneracy_orbits(b, &c, &InteriorMask::margin(2)).unwrap();
            assert!(r.pass(), "g={} {:?}", g, r);
        }
    }
}
