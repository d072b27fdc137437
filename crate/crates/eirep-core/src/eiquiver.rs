//! EI quivers and free EI categories.
//!
//! An EI quiver consists of objects with finite automorphism groups, plus
//! acyclic arrows x -> y each carrying an (Aut(y), Aut(x))-biset. The free
//! EI category on a quiver has hom-sets built from arrow paths: tuples of
//! biset points glued over the intermediate groups, composed by
//! concatenation. Every skeletal finite EI category receives a canonical
//! surjective functor from the free category on its unfactorizable arrows;
//! the category is called free when that functor is bijective, which this
//! module detects by counting.

use std::collections::HashMap;

use crate::biset::{Biset, UnionFind};
use crate::category::{AutGroup, FiniteCategory, MorInfo, MAX_MORPHISMS};
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// Hard bound on raw (pre-glue) path tuples enumerated while building a
/// free cover.
pub const MAX_RAW_TUPLES: usize = 1 << 20;

#[derive(Clone)]
pub struct EiArrow {
    pub src: usize,
    pub tgt: usize,
    pub biset: Biset,
}

/// A finite EI quiver: vertex groups plus biset-labelled arrows between
/// distinct vertices, with no directed cycles.
#[derive(Clone)]
pub struct EiQuiver {
    object_names: Vec<String>,
    groups: Vec<FiniteGroup>,
    arrows: Vec<EiArrow>,
}

impl EiQuiver {
    pub fn new(
        object_names: Vec<String>,
        groups: Vec<FiniteGroup>,
        arrows: Vec<EiArrow>,
    ) -> Result<EiQuiver> {
        let n = object_names.len();
        if n == 0 {
            return Err(Error::Validation("quiver needs at least one object".into()));
        }
        if groups.len() != n {
            return Err(Error::Validation("need one group per object".into()));
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= n || a.tgt >= n {
                return Err(Error::Validation(format!("arrow {i} has out-of-range endpoints")));
            }
            if a.src == a.tgt {
                return Err(Error::Validation(format!(
                    "arrow {i} is a loop; endomorphisms belong to the vertex groups"
                )));
            }
            if a.biset.size() == 0 {
                return Err(Error::Validation(format!("arrow {i} carries an empty biset")));
            }
            if a.biset.left_group() != &groups[a.tgt] || a.biset.right_group() != &groups[a.src] {
                return Err(Error::Validation(format!(
                    "arrow {i} biset groups do not match its endpoint groups"
                )));
            }
        }
        // Directed cycles would make the free category infinite.
        let mut indeg = vec![0usize; n];
        for a in &arrows {
            indeg[a.tgt] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut removed = 0;
        while let Some(x) = queue.pop() {
            removed += 1;
            for a in &arrows {
                if a.src == x {
                    indeg[a.tgt] -= 1;
                    if indeg[a.tgt] == 0 {
                        queue.push(a.tgt);
                    }
                }
            }
        }
        if removed != n {
            return Err(Error::Validation("quiver has a directed cycle".into()));
        }
        Ok(EiQuiver { object_names, groups, arrows })
    }

    pub fn n_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.object_names[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn group(&self, x: usize) -> &FiniteGroup {
        &self.groups[x]
    }

    pub fn arrows(&self) -> &[EiArrow] {
        &self.arrows
    }

    /// Build the free EI category, failing with a resource error if it
    /// would exceed [`MAX_MORPHISMS`] morphisms.
    pub fn free_ei_cover(&self) -> Result<FreeCover> {
        match self.free_ei_cover_bounded(MAX_MORPHISMS)? {
            Some(c) => Ok(c),
            None => Err(Error::Resource(format!(
                "free category exceeds {MAX_MORPHISMS} morphisms"
            ))),
        }
    }

    /// Like [`free_ei_cover`](Self::free_ei_cover) but with a caller-chosen
    /// morphism budget; `Ok(None)` means the free category is strictly
    /// larger than `max_mor`.
    pub fn free_ei_cover_bounded(&self, max_mor: usize) -> Result<Option<FreeCover>> {
        let n_obj = self.n_objects();
        let max_mor = max_mor.min(MAX_MORPHISMS);

        let mut endo_base = vec![0usize; n_obj];
        let mut next_id = 0usize;
        for x in 0..n_obj {
            endo_base[x] = next_id;
            next_id += self.groups[x].order();
        }
        if next_id > max_mor {
            return Ok(None);
        }

        // Enumerate all composable arrow sequences (finite: the quiver is
        // acyclic), gluing each one's raw tuples over the middle groups.
        struct PathInfo {
            arrows: Vec<usize>,
            src: usize,
            tgt: usize,
            sizes: Vec<usize>,
            n_raw: usize,
            class_of: Vec<usize>,
            reps: Vec<usize>,
            mors: Vec<usize>,
        }
        let mut paths: Vec<PathInfo> = Vec::new();
        let mut path_key: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut total_raw = 0usize;
        let mut total_classes = 0usize;

        let mut frontier: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        while !frontier.is_empty() {
            let mut next_frontier = Vec::new();
            for seq in frontier {
                let src = self.arrows[seq[0]].src;
                let tgt = self.arrows[*seq.last().unwrap()].tgt;
                let sizes: Vec<usize> = seq.iter().map(|&a| self.arrows[a].biset.size()).collect();
                let n_raw = sizes.iter().product::<usize>();
                total_raw += n_raw;
                if total_raw > MAX_RAW_TUPLES {
                    return Err(Error::Resource(format!(
                        "free category needs more than {MAX_RAW_TUPLES} raw path tuples"
                    )));
                }
                let mut uf = UnionFind::new(n_raw);
                // Slide middle-group elements across adjacent components:
                // (m_{i+1} . h) (x) m_i  ~  m_{i+1} (x) (h . m_i).
                let mut stride = sizes[0];
                for i in 0..seq.len().saturating_sub(1) {
                    let lo = &self.arrows[seq[i]].biset;
                    let hi = &self.arrows[seq[i + 1]].biset;
                    let mid_order = self.groups[self.arrows[seq[i]].tgt].order();
                    let lo_stride = stride / sizes[i];
                    let hi_stride = stride;
                    for t in 0..n_raw {
                        let ci = (t / lo_stride) % sizes[i];
                        let cj = (t / hi_stride) % sizes[i + 1];
                        for h in 1..mid_order {
                            let a = t - cj * hi_stride + hi.right_act(cj, h) * hi_stride;
                            let b = t - ci * lo_stride + lo.left_act(h, ci) * lo_stride;
                            uf.union(a, b);
                        }
                    }
                    stride *= sizes[i + 1];
                }
                let (n_classes, class_of) = uf.classes();
                let mut reps = vec![usize::MAX; n_classes];
                for (t, &c) in class_of.iter().enumerate() {
                    if reps[c] == usize::MAX {
                        reps[c] = t;
                    }
                }
                total_classes += n_classes;
                if endo_base[n_obj - 1] + self.groups[n_obj - 1].order() + total_classes > max_mor
                {
                    return Ok(None);
                }
                // Extend the path by every arrow leaving its target.
                for a in 0..self.arrows.len() {
                    if self.arrows[a].src == tgt {
                        let mut longer = seq.clone();
                        longer.push(a);
                        next_frontier.push(longer);
                    }
                }
                path_key.insert(seq.clone(), paths.len());
                paths.push(PathInfo {
                    arrows: seq,
                    src,
                    tgt,
                    sizes,
                    n_raw,
                    class_of,
                    reps,
                    mors: Vec::new(),
                });
            }
            frontier = next_frontier;
        }

        // Global morphism ids: endomorphisms by object, then cross classes
        // grouped by (src, tgt) pair, paths in discovery order.
        let mut mors: Vec<MorInfo> = Vec::new();
        let mut kinds: Vec<Kind> = Vec::new();
        for x in 0..n_obj {
            for i in 0..self.groups[x].order() {
                mors.push(MorInfo { src: x, tgt: x, name: format!("{}:g{}", self.object_names[x], i) });
                kinds.push(Kind::Endo { obj: x, elem: i });
            }
        }
        let mut pair_count: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pair_paths: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (pi, p) in paths.iter().enumerate() {
            pair_paths.entry((p.src, p.tgt)).or_default().push(pi);
        }
        let mut pairs: Vec<(usize, usize)> = pair_paths.keys().copied().collect();
        pairs.sort_unstable();
        for pair in pairs {
            for &pi in &pair_paths[&pair] {
                let n_classes = paths[pi].reps.len();
                let mut ids = Vec::with_capacity(n_classes);
                for _ in 0..n_classes {
                    let k = pair_count.entry(pair).or_insert(0);
                    let name = format!(
                        "{}->{}:{}",
                        self.object_names[pair.0], self.object_names[pair.1], *k
                    );
                    *k += 1;
                    ids.push(mors.len());
                    mors.push(MorInfo { src: pair.0, tgt: pair.1, name });
                    kinds.push(Kind::Cross { path: pi, class: ids[ids.len() - 1] - ids[0] });
                }
                paths[pi].mors = ids;
            }
        }
        let n = mors.len();
        debug_assert!(n <= max_mor);

        // Dense composition table, u32::MAX for non-composable.
        let mut table = vec![u32::MAX; n * n];
        let raw_of_class = |pi: usize, c: usize| paths[pi].reps[c];
        let comp_at = |pi: usize, raw: usize, pos: usize| {
            let mut stride = 1usize;
            for l in 0..pos {
                stride *= paths[pi].sizes[l];
            }
            (raw / stride) % paths[pi].sizes[pos]
        };
        let with_comp = |pi: usize, raw: usize, pos: usize, newc: usize| {
            let old = comp_at(pi, raw, pos);
            let mut stride = 1usize;
            for l in 0..pos {
                stride *= paths[pi].sizes[l];
            }
            raw - old * stride + newc * stride
        };
        for f in 0..n {
            for g in 0..n {
                if mors[f].src != mors[g].tgt {
                    continue;
                }
                let h = match (&kinds[f], &kinds[g]) {
                    (Kind::Endo { obj, elem: i }, Kind::Endo { elem: j, .. }) => {
                        endo_base[*obj] + self.groups[*obj].mul(*i, *j)
                    }
                    (Kind::Endo { elem: i, .. }, Kind::Cross { path, class }) => {
                        let p = &paths[*path];
                        let raw = raw_of_class(*path, *class);
                        let last = p.sizes.len() - 1;
                        let pt = comp_at(*path, raw, last);
                        let moved = self.arrows[p.arrows[last]].biset.left_act(*i, pt);
                        let raw2 = with_comp(*path, raw, last, moved);
                        p.mors[p.class_of[raw2]]
                    }
                    (Kind::Cross { path, class }, Kind::Endo { elem: j, .. }) => {
                        let p = &paths[*path];
                        let raw = raw_of_class(*path, *class);
                        let pt = comp_at(*path, raw, 0);
                        let moved = self.arrows[p.arrows[0]].biset.right_act(pt, *j);
                        let raw2 = with_comp(*path, raw, 0, moved);
                        p.mors[p.class_of[raw2]]
                    }
                    (Kind::Cross { path: pf, class: cf }, Kind::Cross { path: pg, class: cg }) => {
                        // g applied first: concatenated path is g's arrows
                        // then f's arrows.
                        let mut seq = paths[*pg].arrows.clone();
                        seq.extend_from_slice(&paths[*pf].arrows);
                        let pi = path_key[&seq];
                        let raw =
                            raw_of_class(*pg, *cg) + paths[*pg].n_raw * raw_of_class(*pf, *cf);
                        paths[pi].mors[paths[pi].class_of[raw]]
                    }
                };
                table[f * n + g] = h as u32;
            }
        }

        let identities: Vec<usize> = endo_base.clone();
        let cat = FiniteCategory::new(self.object_names.clone(), mors, identities, &|f, g| {
            let v = table[f * n + g];
            (v != u32::MAX).then_some(v as usize)
        })?;

        let mut decomposition = HashMap::new();
        for (mi, kind) in kinds.iter().enumerate() {
            if let Kind::Cross { path, class } = kind {
                let p = &paths[*path];
                let raw = p.reps[*class];
                let decomp: Vec<(usize, usize)> =
                    (0..p.arrows.len()).map(|pos| (p.arrows[pos], comp_at(*path, raw, pos))).collect();
                decomposition.insert(mi, decomp);
            }
        }
        Ok(Some(FreeCover { cat, endo_base, decomposition }))
    }
}

enum Kind {
    Endo { obj: usize, elem: usize },
    Cross { path: usize, class: usize },
}

/// A free EI category together with bookkeeping tying its morphisms back to
/// the quiver.
pub struct FreeCover {
    pub cat: FiniteCategory,
    endo_base: Vec<usize>,
    /// Cross morphism id -> representative decomposition, innermost
    /// (first applied) component first, as (arrow id, carrier point).
    pub decomposition: HashMap<usize, Vec<(usize, usize)>>,
}

impl FreeCover {
    /// Morphism id of a vertex-group element.
    pub fn endo_mor(&self, object: usize, elem: usize) -> usize {
        self.endo_base[object] + elem
    }
}

/// The EI quiver underlying a category: its automorphism groups and, per
/// ordered pair of objects, the biset of unfactorizable morphisms.
pub fn ei_quiver_of(c: &FiniteCategory) -> Result<EiQuiver> {
    let n = c.n_objects();
    let auts: Vec<AutGroup> = (0..n).map(|x| c.aut_group(x)).collect();
    let mut arrows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || c.hom(x, y).is_empty() {
                continue;
            }
            let hb = c.hom_biset(x, y, &auts[x], &auts[y])?;
            let unf: Vec<usize> = (0..hb.carrier.len())
                .filter(|&i| c.is_unfactorizable(hb.carrier[i]))
                .collect();
            if unf.is_empty() {
                continue;
            }
            let pos: HashMap<usize, usize> = unf.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let restrict = |perm: &crate::perm::Perm| -> Result<crate::perm::Perm> {
                let images = unf
                    .iter()
                    .map(|&p| {
                        pos.get(&perm.apply(p)).map(|&q| q as u32).ok_or_else(|| {
                            Error::Structure(
                                "automorphism action does not preserve unfactorizability".into(),
                            )
                        })
                    })
                    .collect::<Result<Vec<u32>>>()?;
                crate::perm::Perm::from_images(images)
            };
            let mut left = Vec::new();
            for h in 0..auts[y].order() {
                left.push(restrict(hb.biset.left_perm(h))?);
            }
            let mut right = Vec::new();
            for g in 0..auts[x].order() {
                right.push(restrict(hb.biset.right_perm(g))?);
            }
            let biset = Biset::new(auts[y].group.clone(), auts[x].group.clone(), unf.len(), left, right)?;
            arrows.push(EiArrow { src: x, tgt: y, biset });
        }
    }
    EiQuiver::new(
        c.object_names().to_vec(),
        auts.into_iter().map(|a| a.group).collect(),
        arrows,
    )
}

/// Whether the canonical functor from the free category on the
/// unfactorizable arrows is an isomorphism. That functor is always
/// surjective on hom-sets, so it suffices to compare counts.
pub fn is_free(c: &FiniteCategory) -> Result<bool> {
    let q = ei_quiver_of(c)?;
    match q.free_ei_cover_bounded(c.n_morphisms()) {
        Ok(Some(cover)) => Ok((0..c.n_objects()).all(|x| {
            (0..c.n_objects()).all(|y| cover.cat.hom(x, y).len() == c.hom(x, y).len())
        })),
        // The free category is strictly bigger than C, hence not C.
        Ok(None) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn trivial_group() -> FiniteGroup {
        FiniteGroup::trivial(1)
    }

    /// x -> y with two C2-equivariant points: the Kronecker-style quiver
    /// with trivial groups and a 2-point biset.
    fn two_point_quiver() -> EiQuiver {
        let g = trivial_group();
        let biset = Biset::new(
            g.clone(),
            g.clone(),
            2,
            vec![Perm::identity(2)],
            vec![Perm::identity(2)],
        )
        .unwrap();
        EiQuiver::new(
            vec!["x".into(), "y".into()],
            vec![g.clone(), g],
            vec![EiArrow { src: 0, tgt: 1, biset }],
        )
        .unwrap()
    }

    #[test]
    fn kronecker_cover_has_four_morphisms() {
        let q = two_point_quiver();
        let cover = q.free_ei_cover().unwrap();
        assert_eq!(cover.cat.n_morphisms(), 4);
        assert_eq!(cover.cat.hom(0, 1).len(), 2);
        assert!(cover.cat.is_valid_ei());
        assert!(is_free(&cover.cat).unwrap());
    }

    #[test]
    fn rejects_cycles_and_loops() {
        let g = trivial_group();
        let b = |s: usize| {
            Biset::new(g.clone(), g.clone(), s, vec![Perm::identity(s)], vec![Perm::identity(s)])
                .unwrap()
        };
        let loop_arrow = EiArrow { src: 0, tgt: 0, biset: b(1) };
        assert!(EiQuiver::new(vec!["x".into()], vec![g.clone()], vec![loop_arrow]).is_err());
        let cyc = vec![
            EiArrow { src: 0, tgt: 1, biset: b(1) },
            EiArrow { src: 1, tgt: 0, biset: b(1) },
        ];
        assert!(EiQuiver::new(
            vec!["x".into(), "y".into()],
            vec![g.clone(), g.clone()],
            cyc
        )
        .is_err());
    }

    /// Two composable arrows with a C2 in the middle. The glued hom-set
    /// x -> z must have size |Omega_2| * |Omega_1| / |C2| = 2 when both
    /// actions are free of fixed points.
    #[test]
    fn middle_group_glues_tuples() {
        let triv = trivial_group();
        let c2 = FiniteGroup::cyclic(2);
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        // Omega_1: x -> y, carrier 2, left C2 swaps, right trivial.
        let omega1 = Biset::new(
            c2.clone(),
            triv.clone(),
            2,
            vec![Perm::identity(2), swap.clone()],
            vec![Perm::identity(2)],
        )
        .unwrap();
        // Omega_2: y -> z, carrier 2, right C2 swaps, left trivial.
        let omega2 = Biset::new(
            triv.clone(),
            c2.clone(),
            2,
            vec![Perm::identity(2)],
            vec![Perm::identity(2), swap],
        )
        .unwrap();
        let q = EiQuiver::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![triv.clone(), c2, triv],
            vec![EiArrow { src: 0, tgt: 1, biset: omega1 }, EiArrow { src: 1, tgt: 2, biset: omega2 }],
        )
        .unwrap();
        let cover = q.free_ei_cover().unwrap();
        // Morphisms: 1 + 2 + 1 identities/endos, 2 + 2 single arrows,
        // 2*2/2 = 2 composites.
        assert_eq!(cover.cat.hom(0, 2).len(), 2);
        assert_eq!(cover.cat.n_morphisms(), 10);
        assert!(cover.cat.is_valid_ei());
        assert!(is_free(&cover.cat).unwrap());
        // Decomposition of a cross morphism multiplies back to itself.
        let m = cover.cat.hom(0, 2)[0];
        let d = &cover.decomposition[&m];
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn quiver_of_a_path_category_roundtrips() {
        let c = crate::category::tests::a3_path();
        let q = ei_quiver_of(&c).unwrap();
        assert_eq!(q.arrows().len(), 2);
        assert!(is_free(&c).unwrap());
    }

    #[test]
    fn commutative_square_is_not_free() {
        // Poset category: w <= x, w <= y, x <= z, y <= z with the two
        // composites w -> z identified. Free cover would have 2 morphisms
        // w -> z.
        let names: Vec<String> = ["w", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let mut mors = Vec::new();
        for (i, n) in names.iter().enumerate() {
            mors.push(MorInfo { src: i, tgt: i, name: format!("id_{n}") });
        }
        mors.push(MorInfo { src: 0, tgt: 1, name: "a".into() }); // 4
        mors.push(MorInfo { src: 0, tgt: 2, name: "b".into() }); // 5
        mors.push(MorInfo { src: 1, tgt: 3, name: "c".into() }); // 6
        mors.push(MorInfo { src: 2, tgt: 3, name: "d".into() }); // 7
        mors.push(MorInfo { src: 0, tgt: 3, name: "ca".into() }); // 8
        let compose = |f: usize, g: usize| -> Option<usize> {
            let m = |i: usize| (mors_src(i), mors_tgt(i));
            fn mors_src(i: usize) -> usize {
                [0, 1, 2, 3, 0, 0, 1, 2, 0][i]
            }
            fn mors_tgt(i: usize) -> usize {
                [0, 1, 2, 3, 1, 2, 3, 3, 3][i]
            }
            let (gs, gt) = m(g);
            let (fs, ft) = m(f);
            if fs != gt {
                return None;
            }
            // Thin category: unique morphism per related pair.
            Some(match (gs, ft) {
                (0, 0) => 0,
                (1, 1) => 1,
                (2, 2) => 2,
                (3, 3) => 3,
                (0, 1) => 4,
                (0, 2) => 5,
                (1, 3) => 6,
                (2, 3) => 7,
                (0, 3) => 8,
                _ => unreachable!(),
            })
        };
        let c = FiniteCategory::new(names, mors.clone(), vec![0, 1, 2, 3], &compose).unwrap();
        assert!(c.is_valid_ei());
        assert!(!is_free(&c).unwrap());
        let q = ei_quiver_of(&c).unwrap();
        let cover = q.free_ei_cover().unwrap();
        assert_eq!(cover.cat.hom(0, 3).len(), 2);
    }
}
