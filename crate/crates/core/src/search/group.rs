//! The equivalence group on quadruples, as signed permutations of the
//! flattened entries `A‖B‖C‖D`.

use std::collections::{HashSet, VecDeque};

use crate::objects::{BaseQuad, QuadKind};
use crate::seqcore::{Slot, SymmetryCode};

/// `out[i] = sign[i] * x[perm[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: Vec<u16>,
    sign: Vec<i8>,
}

impl SignedPerm {
    fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n as u16).collect(), sign: vec![1; n] }
    }

    pub fn apply(&self, x: &[i8]) -> Vec<i8> {
        self.perm.iter().zip(&self.sign).map(|(&p, &s)| s * x[usize::from(p)]).collect()
    }

    /// `self ∘ other`: apply `other` first.
    fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let perm = self.perm.iter().map(|&p| other.perm[usize::from(p)]).collect();
        let sign = self.perm.iter().zip(&self.sign).map(|(&p, &s)| s * other.sign[usize::from(p)]).collect();
        SignedPerm { perm, sign }
    }
}

fn ranges(r: usize, s: usize) -> [std::ops::Range<usize>; 4] {
    [0..r, r..2 * r, 2 * r..2 * r + s, 2 * r + s..2 * r + 2 * s]
}

/// The signed permutation performing one generator on quads of lengths (r,s).
pub fn generator(op: SymmetryCode, r: usize, s: usize) -> SignedPerm {
    let n = 2 * r + 2 * s;
    let mut g = SignedPerm::identity(n);
    let parts = ranges(r, s);
    match op {
        SymmetryCode::SwapAB => {
            for i in 0..r {
                g.perm.swap(i, i + r);
            }
        }
        SymmetryCode::SwapCD => {
            for i in 0..s {
                g.perm.swap(2 * r + i, 2 * r + s + i);
            }
        }
        SymmetryCode::Negate(slot) => {
            for i in parts[slot.index()].clone() {
                g.sign[i] = -1;
            }
        }
        SymmetryCode::Reverse(slot) => {
            let range = parts[slot.index()].clone();
            for (k, i) in range.clone().enumerate() {
                g.perm[i] = (range.end - 1 - k) as u16;
            }
        }
        SymmetryCode::AlternateAll => {
            for range in parts {
                for (k, i) in range.enumerate() {
                    if k % 2 == 1 {
                        g.sign[i] = -1;
                    }
                }
            }
        }
    }
    g
}

/// Generators used for quads of the given kind. Normal and near-normal
/// quads use the subgroup that keeps the link between A and B intact:
/// A and B are negated together and only C, D are reversed alone.
pub fn generators_for(kind: QuadKind, r: usize, s: usize) -> Vec<SignedPerm> {
    match kind {
        QuadKind::Plain => SymmetryCode::generators().into_iter().map(|op| generator(op, r, s)).collect(),
        QuadKind::Normal | QuadKind::NearNormal => {
            let both =
                generator(SymmetryCode::Negate(Slot::A), r, s).compose(&generator(SymmetryCode::Negate(Slot::B), r, s));
            let mut out = vec![generator(SymmetryCode::SwapAB, r, s), generator(SymmetryCode::SwapCD, r, s), both];
            out.extend(
                [
                    SymmetryCode::Negate(Slot::C),
                    SymmetryCode::Negate(Slot::D),
                    SymmetryCode::Reverse(Slot::C),
                    SymmetryCode::Reverse(Slot::D),
                    SymmetryCode::AlternateAll,
                ]
                .into_iter()
                .map(|op| generator(op, r, s)),
            );
            out
        }
    }
}

/// All elements of the group generated by `generators_for(kind, r, s)`.
#[derive(Clone, Debug)]
pub struct Group {
    elems: Vec<SignedPerm>,
}

impl Group {
    pub fn new(kind: QuadKind, r: usize, s: usize) -> Self {
        let gens = generators_for(kind, r, s);
        let id = SignedPerm::identity(2 * r + 2 * s);
        let mut seen: HashSet<SignedPerm> = HashSet::from([id.clone()]);
        let mut elems = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for h in &gens {
                let next = h.compose(&g);
                if seen.insert(next.clone()) {
                    elems.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Group { elems }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn orbit(&self, flat: &[i8]) -> HashSet<Vec<i8>> {
        self.elems.iter().map(|g| g.apply(flat)).collect()
    }

    /// Least image in the order where `+` precedes `-`.
    pub fn canonical(&self, flat: &[i8]) -> Vec<i8> {
        self.elems.iter().map(|g| g.apply(flat)).min_by(|a, b| lex_key(a).cmp(lex_key(b))).unwrap_or_default()
    }
}

fn lex_key(x: &[i8]) -> impl Iterator<Item = bool> + '_ {
    x.iter().map(|&v| v < 0)
}

/// Lexicographically least member of the orbit of `q`, using the group
/// that matches `q.kind`.
pub fn canonical_form(q: &BaseQuad) -> BaseQuad {
    let group = Group::new(q.kind, q.r(), q.s());
    BaseQuad::from_flat(&group.canonical(&q.flatten()), q.r(), q.s(), q.kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::verify_base;
    use crate::seqcore::apply_symmetry;

    fn quad() -> BaseQuad {
        BaseQuad::new("++".parse().unwrap(), "+-".parse().unwrap(), "+".parse().unwrap(), "+".parse().unwrap()).unwrap()
    }

    #[test]
    fn generators_agree_with_apply_symmetry() {
        let q =
            BaseQuad::new("++-".parse().unwrap(), "+-+".parse().unwrap(), "+-".parse().unwrap(), "--".parse().unwrap())
                .unwrap();
        for op in SymmetryCode::generators() {
            let via_perm = generator(op, 3, 2).apply(&q.flatten());
            assert_eq!(via_perm, apply_symmetry(op, &q).flatten(), "{op:?}");
        }
    }

    #[test]
    fn group_orders() {
        let full = Group::new(QuadKind::Plain, 3, 2);
        assert_eq!(full.order(), 2048);
        assert!(Group::new(QuadKind::Normal, 3, 2).order() < 2048);
        assert!(Group::new(QuadKind::Plain, 1, 1).order() <= 2048);
    }

    #[test]
    fn canonical_is_orbit_minimum() {
        let q = quad();
        let g = Group::new(QuadKind::Plain, 2, 1);
        let orbit = g.orbit(&q.flatten());
        let least = orbit.iter().min_by(|a, b| lex_key(a).cmp(lex_key(b))).unwrap();
        assert_eq!(&canonical_form(&q).flatten(), least);
        for member in &orbit {
            let m = BaseQuad::from_flat(member, 2, 1, QuadKind::Plain);
            assert!(verify_base(&m));
            assert_eq!(canonical_form(&m), canonical_form(&q));
        }
    }

    #[test]
    fn canonical_is_idempotent_and_invariant() {
        let q = quad();
        let c = canonical_form(&q);
        assert_eq!(canonical_form(&c), c);
        for op in SymmetryCode::generators() {
            assert_eq!(canonical_form(&apply_symmetry(op, &q)), c);
        }
    }
}
