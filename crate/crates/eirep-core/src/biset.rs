//! Finite (H, G)-bisets: a set with a left H-action and a right G-action
//! that commute. In a finite EI category, every hom-set C(x, y) is a biset
//! for the automorphism groups of y (left) and x (right).

use crate::group::{FiniteGroup, Quotient, Subgroup};
use crate::perm::Perm;
use crate::{Error, Result};

#[derive(Clone)]
pub struct Biset {
    left_group: FiniteGroup,
    right_group: FiniteGroup,
    size: usize,
    /// For each element h of the left group, the permutation pt -> h·pt.
    left: Vec<Perm>,
    /// For each element g of the right group, the permutation pt -> pt·g.
    right: Vec<Perm>,
}

impl std::fmt::Debug for Biset {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fm,
            "Biset(|H|={}, |G|={}, size {})",
            self.left_group.order(),
            self.right_group.order(),
            self.size
        )
    }
}

impl Biset {
    /// Build from the full action tables and verify the biset axioms.
    pub fn new(
        left_group: FiniteGroup,
        right_group: FiniteGroup,
        size: usize,
        left: Vec<Perm>,
        right: Vec<Perm>,
    ) -> Result<Biset> {
        if left.len() != left_group.order() || right.len() != right_group.order() {
            return Err(Error::Validation(
                "action tables must have one permutation per group element".into(),
            ));
        }
        for p in left.iter().chain(right.iter()) {
            if p.degree() != size {
                return Err(Error::Validation(format!(
                    "action permutation degree {} does not match carrier size {size}",
                    p.degree()
                )));
            }
        }
        let b = Biset { left_group, right_group, size, left, right };
        b.validate()?;
        Ok(b)
    }

    /// Build from the action of each group's generators only; actions of the
    /// remaining elements are derived from their generator words.
    pub fn from_gen_actions(
        left_group: FiniteGroup,
        right_group: FiniteGroup,
        size: usize,
        left_gen_perms: &[Perm],
        right_gen_perms: &[Perm],
    ) -> Result<Biset> {
        if left_gen_perms.len() != left_group.gens().len()
            || right_gen_perms.len() != right_group.gens().len()
        {
            return Err(Error::Validation(
                "need exactly one carrier permutation per group generator".into(),
            ));
        }
        // Left action is a homomorphism: follow the word left to right.
        let mut left = Vec::with_capacity(left_group.order());
        for i in 0..left_group.order() {
            let mut acc = Perm::identity(size);
            for &w in left_group.word(i) {
                acc = acc.compose(&left_gen_perms[w as usize]);
            }
            left.push(acc);
        }
        // Right action is an anti-homomorphism on permutations: pt·(ab) is
        // pt·a then ·b, so later word letters compose on the outside.
        let mut right = Vec::with_capacity(right_group.order());
        for i in 0..right_group.order() {
            let mut acc = Perm::identity(size);
            for &w in right_group.word(i) {
                acc = right_gen_perms[w as usize].compose(&acc);
            }
            right.push(acc);
        }
        Biset::new(left_group, right_group, size, left, right)
    }

    fn validate(&self) -> Result<()> {
        if !self.left[0].is_identity() || !self.right[0].is_identity() {
            return Err(Error::Validation("group identity must act trivially".into()));
        }
        let h = &self.left_group;
        let g = &self.right_group;
        for i in 0..h.order() {
            for j in 0..h.order() {
                if self.left[h.mul(i, j)] != self.left[i].compose(&self.left[j]) {
                    return Err(Error::Validation(
                        "left action is not a group homomorphism".into(),
                    ));
                }
            }
        }
        for i in 0..g.order() {
            for j in 0..g.order() {
                // pt·(ij) = (pt·i)·j.
                if self.right[g.mul(i, j)] != self.right[j].compose(&self.right[i]) {
                    return Err(Error::Validation(
                        "right action is not a right group action".into(),
                    ));
                }
            }
        }
        for hp in &self.left {
            for gp in &self.right {
                if hp.compose(gp) != gp.compose(hp) {
                    return Err(Error::Validation("left and right actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    pub fn left_group(&self) -> &FiniteGroup {
        &self.left_group
    }

    pub fn right_group(&self) -> &FiniteGroup {
        &self.right_group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn left_act(&self, h: usize, pt: usize) -> usize {
        self.left[h].apply(pt)
    }

    #[inline]
    pub fn right_act(&self, pt: usize, g: usize) -> usize {
        self.right[g].apply(pt)
    }

    pub fn left_perm(&self, h: usize) -> &Perm {
        &self.left[h]
    }

    pub fn right_perm(&self, g: usize) -> &Perm {
        &self.right[g]
    }

    pub fn left_orbit(&self, pt: usize) -> Vec<usize> {
        self.orbit_under(pt, &self.left)
    }

    pub fn right_orbit(&self, pt: usize) -> Vec<usize> {
        self.orbit_under(pt, &self.right)
    }

    fn orbit_under(&self, pt: usize, perms: &[Perm]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        seen[pt] = true;
        let mut frontier = vec![pt];
        while let Some(x) = frontier.pop() {
            for p in perms {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.size).filter(|&i| seen[i]).collect()
    }

    pub fn left_transitive(&self) -> bool {
        self.size > 0 && self.left_orbit(0).len() == self.size
    }

    pub fn right_transitive(&self) -> bool {
        self.size > 0 && self.right_orbit(0).len() == self.size
    }

    /// Orbits of the combined (two-sided) action, sorted by least point.
    pub fn two_sided_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut frontier = vec![start];
            while let Some(x) = frontier.pop() {
                for p in self.left.iter().chain(self.right.iter()) {
                    let y = p.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        frontier.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Point stabilizer in the left group.
    pub fn left_stabilizer(&self, pt: usize) -> Subgroup {
        let elems: Vec<usize> =
            (0..self.left_group.order()).filter(|&h| self.left_act(h, pt) == pt).collect();
        Subgroup::new(&self.left_group, elems).expect("point stabilizer is a subgroup")
    }

    /// Point stabilizer in the right group.
    pub fn right_stabilizer(&self, pt: usize) -> Subgroup {
        let elems: Vec<usize> =
            (0..self.right_group.order()).filter(|&g| self.right_act(pt, g) == pt).collect();
        Subgroup::new(&self.right_group, elems).expect("point stabilizer is a subgroup")
    }

    /// Setwise stabilizer in the right group of the left orbit H·pt.
    pub fn right_orbit_setwise_stab(&self, pt: usize) -> Subgroup {
        let orbit = self.left_orbit(pt);
        let in_orbit = |x: usize| orbit.binary_search(&x).is_ok();
        let elems: Vec<usize> = (0..self.right_group.order())
            .filter(|&g| orbit.iter().all(|&x| in_orbit(self.right_act(x, g))))
            .collect();
        Subgroup::new(&self.right_group, elems).expect("setwise stabilizer is a subgroup")
    }

    /// Setwise stabilizer in the left group of the right orbit pt·G.
    pub fn left_orbit_setwise_stab(&self, pt: usize) -> Subgroup {
        let orbit = self.right_orbit(pt);
        let in_orbit = |x: usize| orbit.binary_search(&x).is_ok();
        let elems: Vec<usize> = (0..self.left_group.order())
            .filter(|&h| orbit.iter().all(|&x| in_orbit(self.left_act(h, x))))
            .collect();
        Subgroup::new(&self.left_group, elems).expect("setwise stabilizer is a subgroup")
    }

    /// Least h with h·alpha = alpha·g, if the two one-sided orbits meet there.
    /// For g in the setwise stabilizer of H·alpha such an h always exists.
    pub fn witness_left(&self, alpha: usize, g: usize) -> Option<usize> {
        let target = self.right_act(alpha, g);
        (0..self.left_group.order()).find(|&h| self.left_act(h, alpha) == target)
    }

    /// Least g with alpha·g = h·alpha; defined for every h in the setwise
    /// stabilizer of alpha·G.
    pub fn witness_right(&self, alpha: usize, h: usize) -> Option<usize> {
        let target = self.left_act(h, alpha);
        (0..self.right_group.order()).find(|&g| self.right_act(alpha, g) == target)
    }

    /// The four stabilizer subgroups attached to a base point, together with
    /// the induced isomorphism between the two subquotients.
    pub fn stabilizer_chain(&self, alpha: usize) -> Result<StabChain> {
        if alpha >= self.size {
            return Err(Error::Precondition(format!("base point {alpha} out of range")));
        }
        let g0 = self.right_stabilizer(alpha);
        let g1 = self.right_orbit_setwise_stab(alpha);
        let h0 = self.left_stabilizer(alpha);
        let h1 = self.left_orbit_setwise_stab(alpha);
        let quot_g = Quotient::new(&g1, &g0)?;
        let quot_h = Quotient::new(&h1, &h0)?;
        // rho sends the class of g to the class of any h with h·alpha = alpha·g.
        let mut rho = vec![usize::MAX; quot_g.group.order()];
        for (pos, &g) in g1.elems().iter().enumerate() {
            let h = self
                .witness_left(alpha, g)
                .ok_or_else(|| Error::Structure("no witness for setwise stabilizer element".into()))?;
            let hpos = h1
                .position_of(h)
                .ok_or_else(|| Error::Structure("witness escapes the setwise stabilizer".into()))?;
            let src = quot_g.proj[pos];
            let dst = quot_h.proj[hpos];
            if rho[src] != usize::MAX && rho[src] != dst {
                return Err(Error::Structure("stabilizer quotient map is not well defined".into()));
            }
            rho[src] = dst;
        }
        if quot_g.group.order() != quot_h.group.order() {
            return Err(Error::Structure("stabilizer subquotients have different orders".into()));
        }
        // rho must be a group isomorphism; verify multiplicativity and injectivity.
        let qg = &quot_g.group;
        let qh = &quot_h.group;
        let mut hit = vec![false; qh.order()];
        for &im in &rho {
            if im == usize::MAX || hit[im] {
                return Err(Error::Structure("stabilizer quotient map is not a bijection".into()));
            }
            hit[im] = true;
        }
        for a in 0..qg.order() {
            for b in 0..qg.order() {
                if rho[qg.mul(a, b)] != qh.mul(rho[a], rho[b]) {
                    return Err(Error::Structure(
                        "stabilizer quotient map is not a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(StabChain { alpha, g0, g1, h0, h1, quot_g, quot_h, rho })
    }

    /// The opposite biset: swap the sides, acting through inverses.
    pub fn opposite(&self) -> Biset {
        let left = (0..self.right_group.order())
            .map(|g| self.right[self.right_group.inv(g)].clone())
            .collect();
        let right = (0..self.left_group.order())
            .map(|h| self.left[self.left_group.inv(h)].clone())
            .collect();
        Biset::new(self.right_group.clone(), self.left_group.clone(), self.size, left, right)
            .expect("opposite of a valid biset is valid")
    }

    /// Amalgamated product: for an (K, H)-biset `outer` and an (H, G)-biset
    /// `inner`, the (K, G)-biset outer ×_H inner, the quotient of the product
    /// set by (x·h, y) ~ (x, h·y).
    pub fn product(outer: &Biset, inner: &Biset) -> Result<Biset> {
        if outer.right_group != inner.left_group {
            return Err(Error::Precondition(
                "amalgamated product needs matching middle groups".into(),
            ));
        }
        let h = &inner.left_group;
        let pairs = outer.size * inner.size;
        let mut uf = UnionFind::new(pairs);
        for x in 0..outer.size {
            for y in 0..inner.size {
                for hh in 0..h.order() {
                    let a = outer.right_act(x, hh) * inner.size + y;
                    let b = x * inner.size + inner.left_act(hh, y);
                    uf.union(a, b);
                }
            }
        }
        let (n_classes, class_of) = uf.classes();
        let class_pair = |x: usize, y: usize| class_of[x * inner.size + y];
        // Representative pair per class, for acting.
        let mut rep = vec![usize::MAX; n_classes];
        for x in 0..outer.size {
            for y in 0..inner.size {
                let c = class_pair(x, y);
                if rep[c] == usize::MAX {
                    rep[c] = x * inner.size + y;
                }
            }
        }
        let k = &outer.left_group;
        let g = &inner.right_group;
        let mut left = Vec::with_capacity(k.order());
        for kk in 0..k.order() {
            let images: Vec<u32> = rep
                .iter()
                .map(|&r| class_pair(outer.left_act(kk, r / inner.size), r % inner.size) as u32)
                .collect();
            left.push(Perm::from_images(images)?);
        }
        let mut right = Vec::with_capacity(g.order());
        for gg in 0..g.order() {
            let images: Vec<u32> = rep
                .iter()
                .map(|&r| class_pair(r / inner.size, inner.right_act(r % inner.size, gg)) as u32)
                .collect();
            right.push(Perm::from_images(images)?);
        }
        Biset::new(k.clone(), g.clone(), n_classes, left, right)
    }
}

/// Stabilizers of a base point alpha in a biset: G0 = point stabilizer on the
/// right, G1 = setwise stabilizer of the left orbit, similarly H0 ≤ H1 on the
/// left, with G0 ⊴ G1, H0 ⊴ H1 and an isomorphism rho: G1/G0 -> H1/H0
/// determined by h·alpha = alpha·g.
pub struct StabChain {
    pub alpha: usize,
    pub g0: Subgroup,
    pub g1: Subgroup,
    pub h0: Subgroup,
    pub h1: Subgroup,
    pub quot_g: Quotient,
    pub quot_h: Quotient,
    /// Element map quot_g.group -> quot_h.group.
    pub rho: Vec<usize>,
}

impl StabChain {
    /// Transport an element of G1/G0 across rho.
    pub fn rho_of(&self, qg_elem: usize) -> usize {
        self.rho[qg_elem]
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// (number of classes, class id per element); ids ordered by least member.
    pub(crate) fn classes(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut ids = std::collections::HashMap::new();
        let mut class_of = vec![0usize; n];
        for x in 0..n {
            let r = self.find(x);
            let next = ids.len();
            let id = *ids.entry(r).or_insert(next);
            class_of[x] = id;
        }
        (ids.len(), class_of)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The biset used throughout: carrier S3, left S3 acting by left
    /// multiplication, right C2 acting by right multiplication with the
    /// transposition (0 1).
    pub(crate) fn s3_c2_biset() -> Biset {
        let s3 = FiniteGroup::symmetric(3);
        let c2 = FiniteGroup::cyclic(2);
        // Carrier points are the 6 elements of S3 in lex order.
        let size = 6;
        let carrier = FiniteGroup::symmetric(3);
        let left_gens: Vec<Perm> = s3
            .gens()
            .iter()
            .map(|g| {
                let gi = carrier.elem_index(g).unwrap();
                Perm::from_images(
                    (0..size).map(|x| carrier.mul(gi, x) as u32).collect(),
                )
                .unwrap()
            })
            .collect();
        // The C2 generator acts by right multiplication with (0 1), which is
        // carrier element index 2.
        let t = 2;
        let right_gens = vec![Perm::from_images(
            (0..size).map(|x| carrier.mul(x, t) as u32).collect(),
        )
        .unwrap()];
        Biset::from_gen_actions(s3, c2, size, &left_gens, &right_gens).unwrap()
    }

    #[test]
    fn s3_c2_biset_validates_and_is_transitive() {
        let b = s3_c2_biset();
        assert!(b.left_transitive());
        assert!(!b.right_transitive());
        assert_eq!(b.two_sided_orbits().len(), 1);
    }

    #[test]
    fn stabilizer_chain_on_regular_carrier() {
        let b = s3_c2_biset();
        let chain = b.stabilizer_chain(0).unwrap();
        // Left action is regular, so H0 = 1; right multiplication is free,
        // so G0 = 1. The left orbit is everything, hence G1 = C2, and the
        // right orbit {e, (0 1)} is stabilized exactly by {e, (0 1)} acting
        // on the left.
        assert_eq!(chain.h0.order(), 1);
        assert_eq!(chain.g0.order(), 1);
        assert_eq!(chain.g1.order(), 2);
        assert_eq!(chain.h1.order(), 2);
        assert_eq!(chain.quot_g.group.order(), 2);
        assert_eq!(chain.quot_h.group.order(), 2);
        assert_eq!(chain.rho, vec![0, 1]);
    }

    #[test]
    fn point_stabilizers_constant_along_right_orbit() {
        // Stab_H(alpha·g) = Stab_H(alpha) for every g, since the actions commute.
        let b = s3_c2_biset();
        for alpha in 0..b.size() {
            let s = b.left_stabilizer(alpha);
            for g in 0..b.right_group().order() {
                assert_eq!(b.left_stabilizer(b.right_act(alpha, g)), s);
            }
        }
    }

    #[test]
    fn amalgamated_product_sizes() {
        let c2 = FiniteGroup::cyclic(2);
        // C2 as a (C2, C2)-biset by both-sided multiplication.
        let reg = Biset::from_gen_actions(
            c2.clone(),
            c2.clone(),
            2,
            &[Perm::from_images(vec![1, 0]).unwrap()],
            &[Perm::from_images(vec![1, 0]).unwrap()],
        )
        .unwrap();
        let prod = Biset::product(&reg, &reg).unwrap();
        assert_eq!(prod.size(), 2);

        // Two-point carriers with trivial C2 actions: product has 4 classes.
        let triv = Biset::from_gen_actions(
            c2.clone(),
            c2.clone(),
            2,
            &[Perm::identity(2)],
            &[Perm::identity(2)],
        )
        .unwrap();
        assert_eq!(Biset::product(&triv, &triv).unwrap().size(), 4);
        // Mixing a regular inner action with a trivial outer one collapses to 2.
        assert_eq!(Biset::product(&reg, &triv).unwrap().size(), 2);

        let e = FiniteGroup::trivial(1);
        let single = Biset::from_gen_actions(e.clone(), e.clone(), 1, &[], &[]).unwrap();
        assert_eq!(Biset::product(&single, &single).unwrap().size(), 1);
    }

    #[test]
    fn opposite_is_an_involution() {
        let b = s3_c2_biset();
        let opp = b.opposite();
        assert_eq!(opp.left_group().order(), 2);
        assert_eq!(opp.right_group().order(), 6);
        let back = opp.opposite();
        for h in 0..b.left_group().order() {
            assert_eq!(back.left_perm(h), b.left_perm(h));
        }
        for g in 0..b.right_group().order() {
            assert_eq!(back.right_perm(g), b.right_perm(g));
        }
    }

    #[test]
    fn rejects_non_commuting_actions() {
        let s3 = FiniteGroup::symmetric(3);
        let left: Vec<Perm> = s3.elems().to_vec();
        // Right action by left multiplication does not commute with the left
        // action (S3 is nonabelian), so validation must fail.
        let right: Vec<Perm> = s3.elems().to_vec();
        let r = Biset::new(s3.clone(), s3.clone(), 3, left, right);
        assert!(r.is_err());
    }
}
