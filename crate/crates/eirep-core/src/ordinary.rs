//! The ordinary quiver of a category algebra kC over a splitting field of
//! characteristic coprime to every automorphism group.
//!
//! Vertices are pairs (object, simple module of its automorphism group).
//! Arrows between vertices over different objects are counted through the
//! stabilizer chain of each unfactorizable orbit: with G0 ⊴ G1 ≤ Aut(x),
//! H0 ⊴ H1 ≤ Aut(y) and the induced isomorphism G1/G0 ≅ H1/H0, the
//! multiplicity from (x, V) to (y, W) is Σ_i e_i f_i over the simples Ū_i
//! of G1/G0, where e_i counts Ū_i inflated into the restriction of V and
//! f_i counts the transported inflation inside the restriction of W.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::FiniteCategory;
use crate::field::Fq;
use crate::modrep::{self, FqModule};
use crate::{Error, Result};

/// Which point of each unfactorizable orbit anchors the stabilizer chain.
/// The resulting quiver must not depend on this; tests rotate it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepChoice {
    Least,
    Offset(usize),
}

#[derive(Clone, Debug)]
pub struct QuiverVertex {
    pub object: usize,
    pub simple_index: usize,
    pub dim: usize,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct OrdinaryQuiver {
    pub field: Fq,
    pub vertices: Vec<QuiverVertex>,
    /// (from vertex, to vertex, multiplicity), multiplicity >= 1.
    pub arrows: Vec<(usize, usize, usize)>,
}

impl OrdinaryQuiver {
    pub fn vertex_index(&self, object: usize, simple_index: usize) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.object == object && v.simple_index == simple_index)
    }

    /// Edges of the underlying graph with multiplicities expanded, so a
    /// double arrow shows up as a doubled edge.
    pub fn underlying_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &(a, b, m) in &self.arrows {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            for _ in 0..m {
                out.push((lo, hi));
            }
        }
        out
    }
}

/// Compute the ordinary quiver over an automatically chosen splitting
/// prime, i.e. the least prime congruent to 1 modulo the exponents of all
/// automorphism groups. Such a prime cannot divide any automorphism order,
/// so the multiplicities agree with the characteristic-zero ones.
pub fn ordinary_quiver(c: &FiniteCategory, seed: u64, choice: RepChoice) -> Result<OrdinaryQuiver> {
    let auts: Vec<_> = (0..c.n_objects()).map(|x| c.aut_group(x)).collect();
    let groups: Vec<&crate::group::FiniteGroup> = auts.iter().map(|a| &a.group).collect();
    let l = modrep::splitting_prime(&groups, &[]);
    let f = Fq::prime(l)?;
    ordinary_quiver_over(c, &f, seed, choice)
}

/// Same computation over a caller-chosen field. The field must split every
/// automorphism group and every subquotient arising from a stabilizer
/// chain, and its characteristic must not divide any automorphism order;
/// violations surface as [`Error::NotSplitting`] or [`Error::Precondition`].
pub fn ordinary_quiver_over(
    c: &FiniteCategory,
    f: &Fq,
    seed: u64,
    choice: RepChoice,
) -> Result<OrdinaryQuiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = c.n_objects();
    let auts: Vec<_> = (0..n).map(|x| c.aut_group(x)).collect();
    for a in &auts {
        if f.p() != 0 && a.group.order() as u64 % f.p() == 0 {
            return Err(Error::Precondition(format!(
                "characteristic {} divides |Aut({})| = {}",
                f.p(),
                c.object_name(a.object),
                a.group.order()
            )));
        }
    }

    let mut vertices = Vec::new();
    let mut simples_at: Vec<Vec<FqModule>> = Vec::new();
    let mut base_of: Vec<usize> = Vec::new();
    for x in 0..n {
        let simples = modrep::simple_modules(f, &auts[x].group, &mut rng)?;
        base_of.push(vertices.len());
        for (i, s) in simples.iter().enumerate() {
            vertices.push(QuiverVertex {
                object: x,
                simple_index: i,
                dim: s.dim(),
                label: format!("{}:S{}", c.object_name(x), i),
            });
        }
        simples_at.push(simples);
    }

    let mut arrows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || c.hom(x, y).is_empty() {
                continue;
            }
            let hb = c.hom_biset(x, y, &auts[x], &auts[y])?;
            let mut mult =
                vec![vec![0usize; simples_at[y].len()]; simples_at[x].len()];
            for orbit in hb.biset.two_sided_orbits() {
                if !c.is_unfactorizable(hb.carrier[orbit[0]]) {
                    continue;
                }
                let alpha = match choice {
                    RepChoice::Least => orbit[0],
                    RepChoice::Offset(k) => orbit[k % orbit.len()],
                };
                let chain = hb.biset.stabilizer_chain(alpha)?;
                let mids = modrep::simple_modules(f, &chain.quot_g.group, &mut rng)?;
                for u in &mids {
                    let infl_g = modrep::inflate(&chain.g1, &chain.quot_g, u);
                    let moved = modrep::transport(u, &chain.rho, &chain.quot_h.group);
                    let infl_h = modrep::inflate(&chain.h1, &chain.quot_h, &moved);
                    for (vi, v) in simples_at[x].iter().enumerate() {
                        let e = modrep::hom_dim(&infl_g, &v.restrict(&chain.g1));
                        if e == 0 {
                            continue;
                        }
                        for (wi, w) in simples_at[y].iter().enumerate() {
                            let fcount = modrep::hom_dim(&infl_h, &w.restrict(&chain.h1));
                            mult[vi][wi] += e * fcount;
                        }
                    }
                }
            }
            for (vi, row) in mult.iter().enumerate() {
                for (wi, &m) in row.iter().enumerate() {
                    if m > 0 {
                        arrows.push((base_of[x] + vi, base_of[y] + wi, m));
                    }
                }
            }
        }
    }
    Ok(OrdinaryQuiver { field: f.clone(), vertices, arrows })
}

/// One connected simply laced Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynkinClass {
    A(usize),
    D(usize),
    E(usize),
}

impl std::fmt::Display for DynkinClass {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DynkinClass::A(n) => write!(fm, "A{n}"),
            DynkinClass::D(n) => write!(fm, "D{n}"),
            DynkinClass::E(n) => write!(fm, "E{n}"),
        }
    }
}

/// Decide whether an undirected multigraph (given by its edge list, with
/// repeats meaning multi-edges) is a disjoint union of simply laced Dynkin
/// diagrams. Returns the component list, or a human-readable reason.
pub fn dynkin_classify(
    n_vertices: usize,
    edges: &[(usize, usize)],
) -> std::result::Result<Vec<DynkinClass>, String> {
    for &(a, b) in edges {
        if a >= n_vertices || b >= n_vertices {
            return Err("edge endpoint out of range".into());
        }
        if a == b {
            return Err("graph has a loop".into());
        }
    }
    let mut seen = std::collections::HashSet::new();
    for &(a, b) in edges {
        let key = if a < b { (a, b) } else { (b, a) };
        if !seen.insert(key) {
            return Err(format!("multiple edges between vertices {} and {}", key.0, key.1));
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }

    let mut comp = vec![usize::MAX; n_vertices];
    let mut classes = Vec::new();
    for start in 0..n_vertices {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        let v_count = members.len();
        let e_count = edges
            .iter()
            .filter(|&&(a, _)| comp[a] == id)
            .count();
        if e_count != v_count - 1 {
            return Err("a component contains a cycle".into());
        }
        let branch: Vec<usize> = members.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
        if branch.iter().any(|&v| adj[v].len() >= 4) {
            return Err("a vertex has degree four or more".into());
        }
        match branch.len() {
            0 => classes.push(DynkinClass::A(v_count)),
            1 => {
                let b = branch[0];
                let mut arms: Vec<usize> = adj[b]
                    .iter()
                    .map(|&first| {
                        let mut len = 1;
                        let (mut prev, mut cur) = (b, first);
                        loop {
                            let next: Vec<usize> =
                                adj[cur].iter().copied().filter(|&w| w != prev).collect();
                            match next.as_slice() {
                                [] => break,
                                [w] => {
                                    prev = cur;
                                    cur = *w;
                                    len += 1;
                                }
                                _ => unreachable!("second branch vertex excluded above"),
                            }
                        }
                        len
                    })
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, k] => classes.push(DynkinClass::D(k + 3)),
                    [1, 2, 2] => classes.push(DynkinClass::E(6)),
                    [1, 2, 3] => classes.push(DynkinClass::E(7)),
                    [1, 2, 4] => classes.push(DynkinClass::E(8)),
                    _ => {
                        return Err(format!(
                            "branch vertex with arm lengths {arms:?} is not Dynkin"
                        ))
                    }
                }
            }
            _ => return Err("more than one branch vertex in a component".into()),
        }
    }
    Ok(classes)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::eiquiver::{EiArrow, EiQuiver};

    /// Two objects x, y with Aut(x) = C2, Aut(y) = S3, and six morphisms
    /// x -> y on which S3 acts regularly and C2 acts by right translation
    /// with a transposition. Free on its one arrow, 14 morphisms total.
    pub(crate) fn two_object_s3_category() -> FiniteCategory {
        let b = crate::biset::tests::s3_c2_biset();
        let c2 = b.right_group().clone();
        let s3 = b.left_group().clone();
        let q = EiQuiver::new(
            vec!["x".into(), "y".into()],
            vec![c2, s3],
            vec![EiArrow { src: 0, tgt: 1, biset: b }],
        )
        .unwrap();
        q.free_ei_cover().unwrap().cat
    }

    #[test]
    fn two_object_s3_quiver_is_pinned() {
        let c = two_object_s3_category();
        assert_eq!(c.n_morphisms(), 14);
        let q = ordinary_quiver(&c, 1, RepChoice::Least).unwrap();
        // lcm of the exponents is 6, so the chosen prime is 7.
        assert_eq!(q.field.q(), 7);
        let dims: Vec<(usize, usize)> = q.vertices.iter().map(|v| (v.object, v.dim)).collect();
        assert_eq!(dims, vec![(0, 1), (0, 1), (1, 1), (1, 1), (1, 2)]);
        // Vertex order is (dim, trace vector): x carries trivial then sign,
        // y carries trivial, sign, then the two-dimensional simple.
        let mut arrows = q.arrows.clone();
        arrows.sort_unstable();
        assert_eq!(arrows, vec![(0, 2, 1), (0, 4, 1), (1, 3, 1), (1, 4, 1)]);
    }

    #[test]
    fn representative_choice_does_not_matter() {
        let c = two_object_s3_category();
        let base = ordinary_quiver(&c, 1, RepChoice::Least).unwrap();
        for k in 1..6 {
            let other = ordinary_quiver(&c, 1, RepChoice::Offset(k)).unwrap();
            let mut a = base.arrows.clone();
            let mut b = other.arrows.clone();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b, "offset {k} changed the quiver");
        }
    }

    #[test]
    fn quiver_over_a_bad_characteristic_is_rejected() {
        let c = two_object_s3_category();
        let f2 = Fq::prime(2).unwrap();
        assert!(matches!(
            ordinary_quiver_over(&c, &f2, 0, RepChoice::Least),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn dynkin_recognizes_the_series() {
        // Path on 4 vertices.
        assert_eq!(dynkin_classify(4, &[(0, 1), (1, 2), (2, 3)]), Ok(vec![DynkinClass::A(4)]));
        // Isolated vertices are A1 components.
        assert_eq!(
            dynkin_classify(2, &[]),
            Ok(vec![DynkinClass::A(1), DynkinClass::A(1)])
        );
        // D4 star.
        assert_eq!(
            dynkin_classify(4, &[(0, 1), (0, 2), (0, 3)]),
            Ok(vec![DynkinClass::D(4)])
        );
        // E6: arms 1,2,2 around vertex 2 of a 5-path.
        assert_eq!(
            dynkin_classify(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]),
            Ok(vec![DynkinClass::E(6)])
        );
        // E8: arms 1,2,4.
        assert_eq!(
            dynkin_classify(
                8,
                &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]
            ),
            Ok(vec![DynkinClass::E(8)])
        );
    }

    #[test]
    fn dynkin_rejections() {
        // Cycle.
        assert!(dynkin_classify(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
        // Double edge (Kronecker shape).
        assert!(dynkin_classify(2, &[(0, 1), (0, 1)]).is_err());
        // Two branch vertices.
        assert!(dynkin_classify(
            8,
            &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (3, 6), (3, 7)]
        )
        .is_err());
        // Arms (2,2,2) is affine E6 hat, not Dynkin.
        assert!(dynkin_classify(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).is_err());
        // Degree 4 star is affine D4 hat.
        assert!(dynkin_classify(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).is_err());
    }

    #[test]
    fn quiver_of_a_poset_path() {
        let c = crate::category::tests::a3_path();
        let q = ordinary_quiver(&c, 7, RepChoice::Least).unwrap();
        // Trivial groups: one vertex per object, arrows along the two
        // unfactorizable morphisms, none for the composite.
        assert_eq!(q.vertices.len(), 3);
        assert_eq!(q.arrows.len(), 2);
        assert!(q.arrows.iter().all(|&(_, _, m)| m == 1));
        let classes = dynkin_classify(q.vertices.len(), &q.underlying_edges()).unwrap();
        assert_eq!(classes, vec![DynkinClass::A(3)]);
    }
}
