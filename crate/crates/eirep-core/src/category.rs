//! Finite categories with dense composition tables, and the EI structure
//! living on top: automorphism groups, hom bisets, unfactorizable morphisms
//! and the underlying quiver.

use std::collections::HashMap;
use std::sync::Arc;

use crate::biset::Biset;
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::{Error, Result};

/// Cap on the number of morphisms a category may carry. The composition
/// table is dense and validation walks composable triples, so this has to
/// stay modest.
pub const MAX_MORPHISMS: usize = 4096;

#[derive(Clone, Debug)]
pub struct MorInfo {
    pub src: usize,
    pub tgt: usize,
    pub name: String,
}

struct CatData {
    object_names: Vec<String>,
    mors: Vec<MorInfo>,
    identities: Vec<usize>,
    /// comp[f * n + g] = f∘g when src(f) = tgt(g), else u32::MAX.
    comp: Vec<u32>,
    hom: Vec<Vec<Vec<usize>>>,
}

/// A finite category presented by a full composition table. Construction
/// checks every category axiom, so a value of this type is always an honest
/// category. Cheap to clone.
#[derive(Clone)]
pub struct FiniteCategory(Arc<CatData>);

impl std::fmt::Debug for FiniteCategory {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fm,
            "FiniteCategory({} objects, {} morphisms)",
            self.n_objects(),
            self.n_morphisms()
        )
    }
}

impl FiniteCategory {
    /// `compose[f][g]` must give f∘g (apply g first) for every composable
    /// pair, and `None` exactly for the non-composable ones.
    pub fn new(
        object_names: Vec<String>,
        mors: Vec<MorInfo>,
        identities: Vec<usize>,
        compose: &dyn Fn(usize, usize) -> Option<usize>,
    ) -> Result<FiniteCategory> {
        let n_obj = object_names.len();
        let n = mors.len();
        if n_obj == 0 {
            return Err(Error::Validation("category needs at least one object".into()));
        }
        if n > MAX_MORPHISMS {
            return Err(Error::Resource(format!("more than {MAX_MORPHISMS} morphisms")));
        }
        if identities.len() != n_obj {
            return Err(Error::Validation("need exactly one identity per object".into()));
        }
        for m in &mors {
            if m.src >= n_obj || m.tgt >= n_obj {
                return Err(Error::Validation(format!(
                    "morphism {} has out-of-range endpoints",
                    m.name
                )));
            }
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= n || mors[i].src != x || mors[i].tgt != x {
                return Err(Error::Validation(format!(
                    "identity of object {x} must be an endomorphism of it"
                )));
            }
        }
        let mut comp = vec![u32::MAX; n * n];
        for f in 0..n {
            for g in 0..n {
                let composable = mors[f].src == mors[g].tgt;
                match compose(f, g) {
                    Some(h) => {
                        if !composable {
                            return Err(Error::Validation(format!(
                                "composite defined for non-composable pair ({}, {})",
                                mors[f].name, mors[g].name
                            )));
                        }
                        if h >= n {
                            return Err(Error::Validation("composite index out of range".into()));
                        }
                        if mors[h].src != mors[g].src || mors[h].tgt != mors[f].tgt {
                            return Err(Error::Validation(format!(
                                "composite of {} and {} has wrong endpoints",
                                mors[f].name, mors[g].name
                            )));
                        }
                        comp[f * n + g] = h as u32;
                    }
                    None => {
                        if composable {
                            return Err(Error::Validation(format!(
                                "missing composite for composable pair ({}, {})",
                                mors[f].name, mors[g].name
                            )));
                        }
                    }
                }
            }
        }
        // Identity laws.
        for f in 0..n {
            let idt = identities[mors[f].tgt];
            let ids = identities[mors[f].src];
            if comp[idt * n + f] != f as u32 || comp[f * n + ids] != f as u32 {
                return Err(Error::Validation(format!(
                    "identity laws fail for morphism {}",
                    mors[f].name
                )));
            }
        }
        // Associativity over composable triples.
        for g in 0..n {
            for f in 0..n {
                if mors[f].src != mors[g].tgt {
                    continue;
                }
                let fg = comp[f * n + g] as usize;
                for h in 0..n {
                    if mors[g].src != mors[h].tgt {
                        continue;
                    }
                    let gh = comp[g * n + h] as usize;
                    if comp[fg * n + h] != comp[f * n + gh] {
                        return Err(Error::Validation(format!(
                            "associativity fails on ({}, {}, {})",
                            mors[f].name, mors[g].name, mors[h].name
                        )));
                    }
                }
            }
        }
        let mut hom = vec![vec![Vec::new(); n_obj]; n_obj];
        for (i, m) in mors.iter().enumerate() {
            hom[m.src][m.tgt].push(i);
        }
        Ok(FiniteCategory(Arc::new(CatData { object_names, mors, identities, comp, hom })))
    }

    pub fn n_objects(&self) -> usize {
        self.0.object_names.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.0.object_names[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.0.object_names
    }

    /// Dimension of the category algebra kC.
    pub fn n_morphisms(&self) -> usize {
        self.0.mors.len()
    }

    pub fn mor(&self, m: usize) -> &MorInfo {
        &self.0.mors[m]
    }

    pub fn src(&self, m: usize) -> usize {
        self.0.mors[m].src
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.0.mors[m].tgt
    }

    pub fn mor_name(&self, m: usize) -> &str {
        &self.0.mors[m].name
    }

    pub fn identity(&self, x: usize) -> usize {
        self.0.identities[x]
    }

    /// Morphisms x -> y, ascending.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.0.hom[x][y]
    }

    /// f∘g (g applied first), if composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        let n = self.n_morphisms();
        let v = self.0.comp[f * n + g];
        (v != u32::MAX).then_some(v as usize)
    }

    /// Zigzag connectivity of the object set.
    pub fn is_connected(&self) -> bool {
        let n = self.n_objects();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if !seen[y] && (!self.hom(x, y).is_empty() || !self.hom(y, x).is_empty()) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected components of the object set, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_objects();
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![start];
            comp_of[start] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for y in 0..n {
                    if comp_of[y] == usize::MAX
                        && (!self.hom(x, y).is_empty() || !self.hom(y, x).is_empty())
                    {
                        comp_of[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
    }

    /// Check the EI conditions on an already-valid category. Violations come
    /// back as human-readable strings; empty means the category is a
    /// skeletal finite EI category.
    pub fn ei_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for x in 0..self.n_objects() {
            let endos = self.hom(x, x);
            for &f in endos {
                let has_inverse = endos.iter().any(|&g| {
                    self.compose(f, g) == Some(self.identity(x))
                        && self.compose(g, f) == Some(self.identity(x))
                });
                if !has_inverse {
                    out.push(format!(
                        "endomorphism {} of object {} is not invertible",
                        self.mor_name(f),
                        self.object_name(x)
                    ));
                }
            }
        }
        for x in 0..self.n_objects() {
            for y in 0..self.n_objects() {
                if x != y && !self.hom(x, y).is_empty() && !self.hom(y, x).is_empty() {
                    out.push(format!(
                        "objects {} and {} are isomorphic but distinct (morphisms both ways)",
                        self.object_name(x),
                        self.object_name(y)
                    ));
                }
            }
        }
        if !self.is_connected() {
            out.push("object set is not zigzag-connected".into());
        }
        out
    }

    pub fn is_valid_ei(&self) -> bool {
        self.ei_violations().is_empty()
    }

    /// The automorphism group of an object, realized on its endomorphism set
    /// by left translation.
    pub fn aut_group(&self, x: usize) -> AutGroup {
        let endos: Vec<usize> = self.hom(x, x).to_vec();
        let pos: HashMap<usize, usize> = endos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let deg = endos.len();
        let perm_of = |e: usize| -> Perm {
            Perm::from_images(
                endos
                    .iter()
                    .map(|&m| {
                        let c = self.compose(e, m).expect("endomorphisms compose");
                        pos[&c] as u32
                    })
                    .collect(),
            )
            .expect("left translation is a bijection in a group")
        };
        let gens: Vec<Perm> = endos.iter().map(|&e| perm_of(e)).collect();
        let group = FiniteGroup::from_generators(deg, gens).expect("translation closure is finite");
        debug_assert_eq!(group.order(), deg, "endomorphisms of an EI object form a group");
        let id_pos = pos[&self.identity(x)];
        // Element i of the group is the translation by a unique endomorphism;
        // read it off by applying the permutation to the identity's slot.
        let mor_of_elem: Vec<usize> =
            (0..group.order()).map(|i| endos[group.elem(i).apply(id_pos)]).collect();
        let mut elem_of_mor = HashMap::new();
        for (i, &m) in mor_of_elem.iter().enumerate() {
            elem_of_mor.insert(m, i);
        }
        AutGroup { object: x, group, mor_of_elem, elem_of_mor }
    }

    /// The hom-set C(x, y) as an (Aut(y), Aut(x))-biset, together with the
    /// morphism ids backing each carrier point.
    pub fn hom_biset(&self, x: usize, y: usize, ax: &AutGroup, ay: &AutGroup) -> Result<HomBiset> {
        if ax.object != x || ay.object != y {
            return Err(Error::Precondition("aut groups do not match the requested pair".into()));
        }
        let carrier: Vec<usize> = self.hom(x, y).to_vec();
        let pos: HashMap<usize, usize> =
            carrier.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let size = carrier.len();
        let mut left = Vec::with_capacity(ay.group.order());
        for i in 0..ay.group.order() {
            let e = ay.mor_of_elem[i];
            let images: Vec<u32> = carrier
                .iter()
                .map(|&m| pos[&self.compose(e, m).expect("composable")] as u32)
                .collect();
            left.push(Perm::from_images(images)?);
        }
        let mut right = Vec::with_capacity(ax.group.order());
        for i in 0..ax.group.order() {
            let e = ax.mor_of_elem[i];
            let images: Vec<u32> = carrier
                .iter()
                .map(|&m| pos[&self.compose(m, e).expect("composable")] as u32)
                .collect();
            right.push(Perm::from_images(images)?);
        }
        let biset = Biset::new(ay.group.clone(), ax.group.clone(), size, left, right)?;
        Ok(HomBiset { x, y, carrier, biset })
    }

    /// Morphism ids (across all hom-sets) that admit no factorization
    /// through a third object. Identity-object endomorphisms are never
    /// unfactorizable (they are isomorphisms).
    pub fn unfactorizables(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for x in 0..self.n_objects() {
            for y in 0..self.n_objects() {
                if x == y {
                    continue;
                }
                for &m in self.hom(x, y) {
                    if self.is_unfactorizable(m) {
                        out.push(m);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_unfactorizable(&self, m: usize) -> bool {
        let (x, y) = (self.src(m), self.tgt(m));
        if x == y {
            return false;
        }
        for z in 0..self.n_objects() {
            if z == x || z == y {
                continue;
            }
            for &gamma in self.hom(x, z) {
                for &beta in self.hom(z, y) {
                    if self.compose(beta, gamma) == Some(m) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Write a non-isomorphism as a composite of unfactorizables, innermost
    /// (applied first) last. Errors on endomorphisms.
    pub fn factorize(&self, m: usize) -> Result<Vec<usize>> {
        let (x, y) = (self.src(m), self.tgt(m));
        if x == y {
            return Err(Error::Precondition(
                "endomorphisms of an EI category are isomorphisms; nothing to factorize".into(),
            ));
        }
        if self.is_unfactorizable(m) {
            return Ok(vec![m]);
        }
        for z in 0..self.n_objects() {
            if z == x || z == y {
                continue;
            }
            for &gamma in self.hom(x, z) {
                for &beta in self.hom(z, y) {
                    if self.compose(beta, gamma) == Some(m) {
                        let mut out = self.factorize(beta)?;
                        out.extend(self.factorize(gamma)?);
                        return Ok(out);
                    }
                }
            }
        }
        unreachable!("factorizable morphism must factor through some object")
    }

    /// The relation x ≤ y iff C(x, y) is nonempty; a partial order for a
    /// skeletal EI category.
    pub fn object_leq(&self) -> Vec<Vec<bool>> {
        let n = self.n_objects();
        (0..n)
            .map(|x| (0..n).map(|y| x == y || !self.hom(x, y).is_empty()).collect())
            .collect()
    }

    pub fn opposite(&self) -> FiniteCategory {
        let mors: Vec<MorInfo> = self
            .0
            .mors
            .iter()
            .map(|m| MorInfo { src: m.tgt, tgt: m.src, name: m.name.clone() })
            .collect();
        FiniteCategory::new(
            self.0.object_names.clone(),
            mors,
            self.0.identities.clone(),
            &|f, g| self.compose(g, f),
        )
        .expect("opposite of a valid category is valid")
    }

    /// Full subcategory on the listed objects. Returns the category plus the
    /// object and morphism maps back into `self` (new index -> old index).
    pub fn full_subcategory(&self, objects: &[usize]) -> Result<(FiniteCategory, Vec<usize>, Vec<usize>)> {
        let mut objs: Vec<usize> = objects.to_vec();
        objs.sort_unstable();
        objs.dedup();
        if objs.is_empty() || objs.iter().any(|&x| x >= self.n_objects()) {
            return Err(Error::Precondition("bad object subset".into()));
        }
        let obj_new: HashMap<usize, usize> =
            objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut mor_map = Vec::new();
        let mut mor_new: HashMap<usize, usize> = HashMap::new();
        let mut mors = Vec::new();
        for (old, m) in self.0.mors.iter().enumerate() {
            if obj_new.contains_key(&m.src) && obj_new.contains_key(&m.tgt) {
                mor_new.insert(old, mor_map.len());
                mor_map.push(old);
                mors.push(MorInfo {
                    src: obj_new[&m.src],
                    tgt: obj_new[&m.tgt],
                    name: m.name.clone(),
                });
            }
        }
        let identities: Vec<usize> = objs.iter().map(|&x| mor_new[&self.identity(x)]).collect();
        let names: Vec<String> = objs.iter().map(|&x| self.object_name(x).to_string()).collect();
        let cat = FiniteCategory::new(names, mors, identities, &|f, g| {
            self.compose(mor_map[f], mor_map[g]).map(|h| mor_new[&h])
        })?;
        Ok((cat, objs, mor_map))
    }

    /// Collapse every hom-set to its two-sided orbits: morphisms α and
    /// h∘α∘g become equal. Composition descends exactly when the collapse
    /// is compatible with it; otherwise this reports a structure error.
    pub fn quotient_orbit_collapse(&self) -> Result<FiniteCategory> {
        let n = self.n_morphisms();
        let auts: Vec<AutGroup> = (0..self.n_objects()).map(|x| self.aut_group(x)).collect();
        // Class id per morphism.
        let mut class_of = vec![usize::MAX; n];
        let mut class_reps: Vec<usize> = Vec::new();
        for x in 0..self.n_objects() {
            for y in 0..self.n_objects() {
                let hom = self.hom(x, y);
                if hom.is_empty() {
                    continue;
                }
                if x == y {
                    // One class: the orbit of the identity is everything.
                    let id = class_reps.len();
                    class_reps.push(self.identity(x));
                    for &m in hom {
                        class_of[m] = id;
                    }
                    continue;
                }
                let hb = self.hom_biset(x, y, &auts[x], &auts[y])?;
                for orbit in hb.biset.two_sided_orbits() {
                    let id = class_reps.len();
                    class_reps.push(hb.carrier[orbit[0]]);
                    for &pt in &orbit {
                        class_of[hb.carrier[pt]] = id;
                    }
                }
            }
        }
        // Composition must be constant on classes.
        for f in 0..n {
            for g in 0..n {
                let Some(fg) = self.compose(f, g) else { continue };
                let (cf, cg) = (class_of[f], class_of[g]);
                let rep = self
                    .compose(class_reps[cf], class_reps[cg])
                    .expect("class representatives share endpoints");
                if class_of[rep] != class_of[fg] {
                    return Err(Error::Structure(
                        "orbit collapse does not respect composition".into(),
                    ));
                }
            }
        }
        let mors: Vec<MorInfo> = class_reps
            .iter()
            .enumerate()
            .map(|(i, &r)| MorInfo {
                src: self.src(r),
                tgt: self.tgt(r),
                name: format!("[{}]{}", i, self.mor_name(r)),
            })
            .collect();
        let identities: Vec<usize> =
            (0..self.n_objects()).map(|x| class_of[self.identity(x)]).collect();
        FiniteCategory::new(self.0.object_names.clone(), mors, identities, &|f, g| {
            self.compose(class_reps[f], class_reps[g]).map(|h| class_of[h])
        })
    }
}

/// The automorphism group of an object together with the dictionary between
/// group elements and endomorphism ids.
pub struct AutGroup {
    pub object: usize,
    pub group: FiniteGroup,
    /// Group element index -> morphism id.
    pub mor_of_elem: Vec<usize>,
    /// Morphism id -> group element index.
    pub elem_of_mor: HashMap<usize, usize>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// A hom-set biset along with the morphism id behind each carrier point.
pub struct HomBiset {
    pub x: usize,
    pub y: usize,
    pub carrier: Vec<usize>,
    pub biset: Biset,
}

impl HomBiset {
    pub fn position_of_mor(&self, m: usize) -> Option<usize> {
        self.carrier.iter().position(|&c| c == m)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The path category on x -> y -> z (A3 with its composite).
    pub(crate) fn a3_path() -> FiniteCategory {
        let names = vec!["x".into(), "y".into(), "z".into()];
        let mors = vec![
            MorInfo { src: 0, tgt: 0, name: "1x".into() },
            MorInfo { src: 1, tgt: 1, name: "1y".into() },
            MorInfo { src: 2, tgt: 2, name: "1z".into() },
            MorInfo { src: 0, tgt: 1, name: "a".into() },
            MorInfo { src: 1, tgt: 2, name: "b".into() },
            MorInfo { src: 0, tgt: 2, name: "ba".into() },
        ];
        let compose = |f: usize, g: usize| -> Option<usize> {
            let tbl: &[(usize, usize, usize)] = &[
                (0, 0, 0),
                (1, 1, 1),
                (2, 2, 2),
                (3, 0, 3),
                (1, 3, 3),
                (4, 1, 4),
                (2, 4, 4),
                (5, 0, 5),
                (2, 5, 5),
                (4, 3, 5),
            ];
            tbl.iter().find(|&&(a, b, _)| a == f && b == g).map(|&(_, _, c)| c)
        };
        FiniteCategory::new(names, mors, vec![0, 1, 2], &compose).unwrap()
    }

    #[test]
    fn path_category_is_valid_ei() {
        let c = a3_path();
        assert_eq!(c.n_morphisms(), 6);
        assert!(c.ei_violations().is_empty());
        assert_eq!(c.hom(0, 2), &[5]);
        assert_eq!(c.compose(4, 3), Some(5));
        assert_eq!(c.compose(3, 4), None);
    }

    #[test]
    fn construction_rejects_broken_tables() {
        let names = vec!["x".into()];
        let mors = vec![MorInfo { src: 0, tgt: 0, name: "1".into() }];
        // Missing composite for (0, 0).
        assert!(FiniteCategory::new(names.clone(), mors.clone(), vec![0], &|_, _| None).is_err());
        // Valid one-object trivial category.
        assert!(
            FiniteCategory::new(names, mors, vec![0], &|_, _| Some(0)).is_ok()
        );
    }

    #[test]
    fn unfactorizables_of_path() {
        let c = a3_path();
        assert_eq!(c.unfactorizables(), vec![3, 4]);
        assert!(!c.is_unfactorizable(5));
        assert_eq!(c.factorize(5).unwrap(), vec![4, 3]);
        assert_eq!(c.factorize(3).unwrap(), vec![3]);
        assert!(c.factorize(0).is_err());
    }

    #[test]
    fn aut_group_of_trivial_objects() {
        let c = a3_path();
        for x in 0..3 {
            let a = c.aut_group(x);
            assert_eq!(a.order(), 1);
            assert_eq!(a.mor_of_elem, vec![c.identity(x)]);
        }
    }

    #[test]
    fn opposite_swaps_homs() {
        let c = a3_path();
        let op = c.opposite();
        assert!(op.ei_violations().is_empty());
        assert_eq!(op.hom(2, 0).len(), 1);
        assert_eq!(op.hom(0, 2).len(), 0);
        let opop = op.opposite();
        for f in 0..c.n_morphisms() {
            for g in 0..c.n_morphisms() {
                assert_eq!(c.compose(f, g), opop.compose(f, g));
            }
        }
    }

    #[test]
    fn full_subcategory_of_path() {
        let c = a3_path();
        let (sub, objs, mor_map) = c.full_subcategory(&[0, 2]).unwrap();
        assert_eq!(objs, vec![0, 2]);
        assert_eq!(sub.n_morphisms(), 3);
        assert_eq!(sub.hom(0, 1).len(), 1);
        assert!(mor_map.contains(&5));
        assert!(sub.ei_violations().iter().all(|v| v.contains("connected")) || sub.is_valid_ei());
    }

    #[test]
    fn orbit_collapse_of_path_is_identity_like() {
        let c = a3_path();
        let q = c.quotient_orbit_collapse().unwrap();
        // Trivial groups: collapse changes nothing.
        assert_eq!(q.n_morphisms(), 6);
        assert!(q.is_valid_ei());
    }

    #[test]
    fn object_order_is_transitive_here() {
        let c = a3_path();
        let leq = c.object_leq();
        assert!(leq[0][1] && leq[1][2] && leq[0][2]);
        assert!(!leq[1][0]);
    }
}
