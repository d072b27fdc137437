//! Concrete finite permutation groups with full element enumeration.
//!
//! Groups here are small (automorphism groups of objects in finite EI
//! categories, and groups acting on hom-set carriers), so we enumerate all
//! elements eagerly and index them. Element indices are stable: elements are
//! sorted lexicographically by image list, which places the identity at
//! index 0. Every element carries a word in the generators, so a group
//! homomorphism can be evaluated from generator images alone.

use std::collections::HashMap;
use std::sync::Arc;

use crate::perm::{lcm, Perm};
use crate::{Error, Result};

/// Hard cap on enumerated group order; inputs beyond this are rejected
/// rather than silently ground through.
pub const MAX_GROUP_ORDER: usize = 50_000;

const MUL_TABLE_LIMIT: usize = 1024;

struct GroupData {
    degree: usize,
    gens: Vec<Perm>,
    /// All elements, lex-sorted by image list. Index 0 is the identity.
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    /// words[i] lists generator indices whose left-to-right composition
    /// (apply rightmost first) equals elems[i].
    words: Vec<Vec<u32>>,
    inv: Vec<u32>,
    /// Dense multiplication table for small groups, row-major.
    table: Option<Vec<u32>>,
    orders: Vec<u32>,
}

/// A finite permutation group, cheap to clone.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree && self.0.elems == other.0.elems)
    }
}
impl Eq for FiniteGroup {}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "FiniteGroup(order {}, degree {})", self.order(), self.degree())
    }
}

impl FiniteGroup {
    /// Close the generators under composition.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<FiniteGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Validation(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let identity = Perm::identity(degree);
        let mut discovered: Vec<(Perm, Vec<u32>)> = vec![(identity.clone(), Vec::new())];
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        seen.insert(identity, 0);
        let mut head = 0;
        while head < discovered.len() {
            let (cur, word) = discovered[head].clone();
            head += 1;
            for (gi, g) in gens.iter().enumerate() {
                let next = cur.compose(g);
                if !seen.contains_key(&next) {
                    if discovered.len() >= MAX_GROUP_ORDER {
                        return Err(Error::Resource(format!(
                            "group order exceeds cap of {MAX_GROUP_ORDER}"
                        )));
                    }
                    let mut w = word.clone();
                    w.push(gi as u32);
                    seen.insert(next.clone(), discovered.len());
                    discovered.push((next, w));
                }
            }
        }
        discovered.sort_by(|a, b| a.0.cmp(&b.0));
        let elems: Vec<Perm> = discovered.iter().map(|(p, _)| p.clone()).collect();
        let words: Vec<Vec<u32>> = discovered.into_iter().map(|(_, w)| w).collect();
        debug_assert!(elems[0].is_identity());
        let index: HashMap<Perm, u32> =
            elems.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let inv: Vec<u32> = elems.iter().map(|p| index[&p.inverse()]).collect();
        let table = if elems.len() <= MUL_TABLE_LIMIT {
            let n = elems.len();
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = index[&elems[i].compose(&elems[j])];
                }
            }
            Some(t)
        } else {
            None
        };
        let orders = elems.iter().map(|p| p.order() as u32).collect();
        Ok(FiniteGroup(Arc::new(GroupData { degree, gens, elems, index, words, inv, table, orders })))
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        FiniteGroup::from_generators(degree, Vec::new()).expect("trivial group always builds")
    }

    /// Cyclic group of order `n` acting on `n` points.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let shift = Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect())
            .expect("shift is a bijection");
        FiniteGroup::from_generators(n, vec![shift]).expect("cyclic group builds")
    }

    /// Full symmetric group on `n` points.
    pub fn symmetric(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap());
        }
        FiniteGroup::from_generators(n, gens).expect("symmetric group builds")
    }

    /// Acts on the disjoint union of the two point sets, componentwise.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let degree = a.degree() + b.degree();
        let mut gens = Vec::new();
        for g in a.gens() {
            let mut im: Vec<u32> = (0..degree as u32).collect();
            for i in 0..a.degree() {
                im[i] = g.apply(i) as u32;
            }
            gens.push(Perm::from_images(im).unwrap());
        }
        for g in b.gens() {
            let mut im: Vec<u32> = (0..degree as u32).collect();
            for i in 0..b.degree() {
                im[a.degree() + i] = (a.degree() + g.apply(i)) as u32;
            }
            gens.push(Perm::from_images(im).unwrap());
        }
        FiniteGroup::from_generators(degree, gens).expect("product of valid groups builds")
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> usize {
        self.0.elems.len()
    }

    pub fn gens(&self) -> &[Perm] {
        &self.0.gens
    }

    pub fn elems(&self) -> &[Perm] {
        &self.0.elems
    }

    pub fn elem(&self, i: usize) -> &Perm {
        &self.0.elems[i]
    }

    pub fn elem_index(&self, p: &Perm) -> Option<usize> {
        self.0.index.get(p).map(|&i| i as usize)
    }

    /// Index 0 is always the identity.
    pub fn identity_index(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.0.table {
            Some(t) => t[i * self.order() + j] as usize,
            None => {
                let p = self.0.elems[i].compose(&self.0.elems[j]);
                self.0.index[&p] as usize
            }
        }
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.0.inv[i] as usize
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Word for element `i` as generator indices; compose left to right
    /// (rightmost generator applied first).
    pub fn word(&self, i: usize) -> &[u32] {
        &self.0.words[i]
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.0.orders[i] as usize
    }

    pub fn exponent(&self) -> usize {
        self.0.orders.iter().fold(1usize, |acc, &o| lcm(acc, o as usize))
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = self.gen_indices();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.0.orders.iter().any(|&o| o as usize == n)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    /// Indices of the stored generators.
    pub fn gen_indices(&self) -> Vec<usize> {
        self.0.gens.iter().map(|g| self.0.index[g] as usize).collect()
    }

    /// Largest power of `p` dividing the group order.
    pub fn p_part(&self, p: u64) -> u64 {
        let mut n = self.order() as u64;
        let mut part = 1;
        while n % p == 0 {
            n /= p;
            part *= p;
        }
        part
    }

    /// A Sylow p-subgroup is cyclic iff some element realizes the full p-part.
    pub fn sylow_p_cyclic(&self, p: u64) -> bool {
        let part = self.p_part(p);
        if part == 1 {
            return true;
        }
        self.0.orders.iter().any(|&o| o as u64 == part)
    }

    /// O^{p'}(G): the smallest normal subgroup with quotient of order prime
    /// to p. It is generated by all elements of p-power order.
    pub fn o_p_prime(&self, p: u64) -> Subgroup {
        let mut gens = Vec::new();
        for i in 0..self.order() {
            let mut o = self.element_order(i) as u64;
            while o % p == 0 {
                o /= p;
            }
            if o == 1 {
                gens.push(i);
            }
        }
        self.subgroup_generated(&gens)
    }

    /// The unique Sylow p-subgroup, if it is normal.
    pub fn normal_sylow_p(&self, p: u64) -> Option<Subgroup> {
        let opp = self.o_p_prime(p);
        if opp.order() as u64 == self.p_part(p) {
            Some(opp)
        } else {
            None
        }
    }

    pub fn subgroup_generated(&self, gen_idxs: &[usize]) -> Subgroup {
        let mut in_sub = vec![false; self.order()];
        in_sub[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gen_idxs {
                let y = self.mul(x, g);
                if !in_sub[y] {
                    in_sub[y] = true;
                    frontier.push(y);
                }
            }
        }
        let elems: Vec<usize> = (0..self.order()).filter(|&i| in_sub[i]).collect();
        Subgroup { parent: self.clone(), elems }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { parent: self.clone(), elems: (0..self.order()).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { parent: self.clone(), elems: vec![0] }
    }

    /// Number of (A, B) double cosets in this group.
    pub fn double_coset_count(&self, a: &Subgroup, b: &Subgroup) -> usize {
        self.double_cosets(a, b).len()
    }

    /// Partition of the element set into A·g·B classes, each sorted, ordered
    /// by least element.
    pub fn double_cosets(&self, a: &Subgroup, b: &Subgroup) -> Vec<Vec<usize>> {
        assert_eq!(a.parent, *self, "left subgroup belongs to a different group");
        assert_eq!(b.parent, *self, "right subgroup belongs to a different group");
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class = Vec::new();
            for &x in &a.elems {
                let xg = self.mul(x, g);
                for &y in &b.elems {
                    let xgy = self.mul(xg, y);
                    if !seen[xgy] {
                        seen[xgy] = true;
                        class.push(xgy);
                    }
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }
}

/// A subgroup of a [`FiniteGroup`], stored as sorted element indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    elems: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elems == other.elems
    }
}
impl Eq for Subgroup {}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "Subgroup(order {} of {})", self.order(), self.parent.order())
    }
}

impl Subgroup {
    /// Build from an element set after checking closure.
    pub fn new(parent: &FiniteGroup, mut elems: Vec<usize>) -> Result<Subgroup> {
        elems.sort_unstable();
        elems.dedup();
        if elems.binary_search(&0).is_err() {
            return Err(Error::Validation("subgroup must contain the identity".into()));
        }
        for &x in &elems {
            if x >= parent.order() {
                return Err(Error::Validation(format!("element index {x} out of range")));
            }
            if elems.binary_search(&parent.inv(x)).is_err() {
                return Err(Error::Validation("subgroup not closed under inverse".into()));
            }
            for &y in &elems {
                if elems.binary_search(&parent.mul(x, y)).is_err() {
                    return Err(Error::Validation("subgroup not closed under product".into()));
                }
            }
        }
        Ok(Subgroup { parent: parent.clone(), elems })
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Sorted element indices into the parent.
    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elems.len() == self.parent.order()
    }

    pub fn is_normal(&self) -> bool {
        // Normality under a generating set of the parent suffices.
        let gens = if self.parent.gens().is_empty() { vec![0] } else { self.parent.gen_indices() };
        gens.iter().all(|&g| self.elems.iter().all(|&x| self.contains(self.parent.conj(g, x))))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.parent, other.parent);
        let elems: Vec<usize> =
            self.elems.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup { parent: self.parent.clone(), elems }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elems.iter().all(|&x| other.contains(x))
    }

    /// Left cosets g·H. Returns (reps, coset index of every parent element);
    /// reps are the least element of each coset, sorted. The identity coset
    /// is always coset 0.
    pub fn left_cosets(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.parent.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in &self.elems {
                coset_of[self.parent.mul(g, h)] = id;
            }
        }
        (reps, coset_of)
    }

    /// A small generating set, grown greedily.
    pub fn small_gens(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut closed = vec![0usize];
        for &x in &self.elems {
            if closed.binary_search(&x).is_ok() {
                continue;
            }
            gens.push(x);
            closed = self.parent.subgroup_generated(&gens).elems.clone();
            if closed.len() == self.elems.len() {
                break;
            }
        }
        gens
    }

    /// Realize the subgroup as a standalone [`FiniteGroup`] on the same
    /// points. Its element list is exactly `self.elems()` in order, so
    /// index translation is positional.
    pub fn as_group(&self) -> FiniteGroup {
        let gens = self.small_gens().iter().map(|&i| self.parent.elem(i).clone()).collect();
        let g = FiniteGroup::from_generators(self.parent.degree(), gens)
            .expect("subgroup elements already enumerated");
        debug_assert_eq!(g.order(), self.order());
        g
    }

    /// Position of parent element `i` in `self.elems()` (= its index in
    /// [`Subgroup::as_group`]).
    pub fn position_of(&self, i: usize) -> Option<usize> {
        self.elems.binary_search(&i).ok()
    }

    /// Express `inner` (a subgroup of the same parent, contained in `self`)
    /// as a subgroup of `self.as_group()`.
    pub fn sub_in(&self, inner: &Subgroup) -> Result<Subgroup> {
        if !inner.is_subgroup_of(self) {
            return Err(Error::Precondition("inner subgroup is not contained in outer".into()));
        }
        let grp = self.as_group();
        let elems: Vec<usize> = inner
            .elems
            .iter()
            .map(|&x| self.position_of(x).expect("containment checked"))
            .collect();
        Ok(Subgroup { parent: grp, elems })
    }
}

/// A quotient group Q = N\G1 realized as a permutation group on the cosets,
/// together with the projection G1 -> Q.
pub struct Quotient {
    pub group: FiniteGroup,
    /// Quotient element index for each element of the subgroup `g1`,
    /// positionally aligned with `g1.elems()`.
    pub proj: Vec<usize>,
}

impl Quotient {
    /// Form g1/g0. Requires g0 ⊴ g1 inside their common parent.
    pub fn new(g1: &Subgroup, g0: &Subgroup) -> Result<Quotient> {
        if !g0.is_subgroup_of(g1) {
            return Err(Error::Precondition("kernel is not contained in the subgroup".into()));
        }
        let parent = g1.parent();
        for &x in g1.elems() {
            for &n in g0.elems() {
                if !g0.contains(parent.conj(x, n)) {
                    return Err(Error::Precondition(
                        "kernel is not normal in the subgroup".into(),
                    ));
                }
            }
        }
        // Cosets x·g0 keyed by least member.
        let mut coset_key: HashMap<usize, usize> = HashMap::new();
        let mut keys: Vec<usize> = Vec::new();
        for &x in g1.elems() {
            if coset_key.contains_key(&x) {
                continue;
            }
            let members: Vec<usize> = g0.elems().iter().map(|&n| parent.mul(x, n)).collect();
            let key = *members.iter().min().unwrap();
            keys.push(key);
            for m in members {
                coset_key.insert(m, key);
            }
        }
        keys.sort_unstable();
        let coset_id: HashMap<usize, usize> =
            keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let m = keys.len();
        let action = |x: usize| -> Perm {
            let images: Vec<u32> =
                keys.iter().map(|&rep| coset_id[&coset_key[&parent.mul(x, rep)]] as u32).collect();
            Perm::from_images(images).expect("coset action is a bijection")
        };
        let gen_perms: Vec<Perm> = g1.small_gens().iter().map(|&x| action(x)).collect();
        let group = FiniteGroup::from_generators(m.max(1), gen_perms)?;
        if group.order() != g1.order() / g0.order() {
            return Err(Error::Structure(
                "coset action is not faithful; kernel mismatch".into(),
            ));
        }
        let proj: Vec<usize> = g1
            .elems()
            .iter()
            .map(|&x| group.elem_index(&action(x)).expect("image lies in the quotient"))
            .collect();
        Ok(Quotient { group, proj })
    }

    /// Image of a parent element (which must lie in g1, identified by its
    /// position there).
    pub fn image_of_position(&self, pos: usize) -> usize {
        self.proj[pos]
    }
}
