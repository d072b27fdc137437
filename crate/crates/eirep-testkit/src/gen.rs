//! Random inputs for the property suites: groups from a fixed pool of small
//! isomorphism types, bisets realized as coset spaces of subgroups of a
//! direct product, categories as free covers of random acyclic EI quivers,
//! and modules as basis-scrambled permutation modules.

use rand::Rng;

use eirep_core::biset::Biset;
use eirep_core::catalg::CatRep;
use eirep_core::category::FiniteCategory;
use eirep_core::eiquiver::{EiArrow, EiQuiver};
use eirep_core::field::Fq;
use eirep_core::group::{FiniteGroup, Subgroup};
use eirep_core::matrix::Mat;
use eirep_core::modrep::FqModule;
use eirep_core::perm::Perm;

/// Size caps for generated inputs, tuned so a 200-case suite stays fast.
#[derive(Clone, Copy, Debug)]
pub struct GenLimits {
    pub max_group_order: usize,
    pub max_carrier: usize,
    pub min_objects: usize,
    pub max_objects: usize,
    pub max_cover_morphisms: usize,
}

impl Default for GenLimits {
    fn default() -> Self {
        GenLimits {
            max_group_order: 8,
            max_carrier: 16,
            min_objects: 1,
            max_objects: 3,
            max_cover_morphisms: 280,
        }
    }
}

/// Pairwise non-isomorphic small groups: every abelian and non-abelian
/// isomorphism type of order at most 8 except the quaternion group and the
/// larger cyclics, plus C5 for odd-characteristic coverage.
pub fn group_pool() -> Vec<FiniteGroup> {
    let c2 = FiniteGroup::cyclic(2);
    let dihedral_4 = FiniteGroup::from_generators(
        4,
        vec![
            Perm::from_images(vec![1, 2, 3, 0]).unwrap(),
            Perm::from_images(vec![0, 3, 2, 1]).unwrap(),
        ],
    )
    .unwrap();
    vec![
        FiniteGroup::trivial(1),
        c2.clone(),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(5),
        FiniteGroup::direct_product(&c2, &c2),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric(3),
        dihedral_4,
    ]
}

pub fn random_group<R: Rng>(rng: &mut R, limits: &GenLimits) -> FiniteGroup {
    let pool = group_pool();
    loop {
        let g = &pool[rng.random_range(0..pool.len())];
        if g.order() <= limits.max_group_order {
            return g.clone();
        }
    }
}

/// Subgroup generated by up to two random elements (possibly trivial).
pub fn random_subgroup<R: Rng>(rng: &mut R, g: &FiniteGroup) -> Subgroup {
    let k = rng.random_range(0..=2);
    let gens: Vec<usize> = (0..k).map(|_| rng.random_range(0..g.order())).collect();
    g.subgroup_generated(&gens)
}

pub fn random_prime_field<R: Rng>(rng: &mut R) -> Fq {
    let p = [2u64, 3, 5, 7][rng.random_range(0..4)];
    Fq::prime(p).unwrap()
}

/// A single-orbit (H, G)-biset: the coset space (H x G)/L for a random
/// subgroup L, with H translating the first coordinate and G the second
/// (inverted, to turn left translation into a right action). Every
/// transitive biset arises this way. Returns None when the coset space
/// exceeds the carrier cap.
pub fn random_transitive_biset<R: Rng>(
    rng: &mut R,
    h: &FiniteGroup,
    g: &FiniteGroup,
    max_carrier: usize,
) -> Option<Biset> {
    let prod = FiniteGroup::direct_product(h, g);
    let l = random_subgroup(rng, &prod);
    let (reps, coset_of) = l.left_cosets();
    let size = reps.len();
    if size > max_carrier {
        return None;
    }
    let hd = h.degree();
    let gd = g.degree();
    let embed_left = |a: usize| -> usize {
        let pa = h.elem(a);
        let images: Vec<u32> = (0..hd + gd)
            .map(|i| if i < hd { pa.apply(i) as u32 } else { i as u32 })
            .collect();
        prod.elem_index(&Perm::from_images(images).unwrap())
            .expect("componentwise embedding lands in the product")
    };
    let embed_right = |b: usize| -> usize {
        let pb = g.elem(b);
        let images: Vec<u32> = (0..hd + gd)
            .map(|i| if i < hd { i as u32 } else { (pb.apply(i - hd) + hd) as u32 })
            .collect();
        prod.elem_index(&Perm::from_images(images).unwrap())
            .expect("componentwise embedding lands in the product")
    };
    let act = |t: usize| -> Perm {
        Perm::from_images((0..size).map(|c| coset_of[prod.mul(t, reps[c])] as u32).collect())
            .unwrap()
    };
    let left: Vec<Perm> = (0..h.order()).map(|a| act(embed_left(a))).collect();
    let right: Vec<Perm> = (0..g.order()).map(|b| act(embed_right(g.inv(b)))).collect();
    Some(Biset::new(h.clone(), g.clone(), size, left, right).expect("coset biset is valid"))
}

/// Disjoint union of two bisets over the same pair of groups.
pub fn biset_union(a: &Biset, b: &Biset) -> Biset {
    let n = a.size() + b.size();
    let glue = |pa: &Perm, pb: &Perm| -> Perm {
        Perm::from_images(
            (0..a.size())
                .map(|i| pa.apply(i) as u32)
                .chain((0..b.size()).map(|i| (pb.apply(i) + a.size()) as u32))
                .collect(),
        )
        .unwrap()
    };
    let left: Vec<Perm> =
        (0..a.left_group().order()).map(|i| glue(a.left_perm(i), b.left_perm(i))).collect();
    let right: Vec<Perm> =
        (0..a.right_group().order()).map(|i| glue(a.right_perm(i), b.right_perm(i))).collect();
    Biset::new(a.left_group().clone(), a.right_group().clone(), n, left, right).unwrap()
}

/// The one-point biset both groups fix.
pub fn singleton_biset(h: &FiniteGroup, g: &FiniteGroup) -> Biset {
    Biset::new(
        h.clone(),
        g.clone(),
        1,
        vec![Perm::identity(1); h.order()],
        vec![Perm::identity(1); g.order()],
    )
    .unwrap()
}

/// A biset with one or two transitive pieces within the carrier cap.
pub fn random_biset<R: Rng>(
    rng: &mut R,
    h: &FiniteGroup,
    g: &FiniteGroup,
    max_carrier: usize,
) -> Biset {
    for _ in 0..60 {
        let pieces = if rng.random_bool(0.3) { 2 } else { 1 };
        let mut acc: Option<Biset> = None;
        for _ in 0..pieces {
            if let Some(b) = random_transitive_biset(rng, h, g, max_carrier) {
                acc = Some(match acc {
                    None => b,
                    Some(a) => biset_union(&a, &b),
                });
            }
        }
        if let Some(b) = acc {
            if b.size() <= max_carrier {
                return b;
            }
        }
    }
    singleton_biset(h, g)
}

/// A random acyclic EI quiver: objects on a spine (so the quiver is
/// connected when it has more than one object) plus occasional extra arrows.
pub fn random_ei_quiver<R: Rng>(rng: &mut R, limits: &GenLimits) -> EiQuiver {
    let n = rng.random_range(limits.min_objects..=limits.max_objects);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let groups: Vec<FiniteGroup> = (0..n).map(|_| random_group(rng, limits)).collect();
    let arrow_cap = if n >= 3 { limits.max_carrier.min(8) } else { limits.max_carrier };
    let mut arrows = Vec::new();
    for tgt in 1..n {
        let src = rng.random_range(0..tgt);
        arrows.push(EiArrow {
            src,
            tgt,
            biset: random_biset(rng, &groups[tgt], &groups[src], arrow_cap),
        });
    }
    for src in 0..n {
        for tgt in (src + 1)..n {
            if arrows.iter().any(|a| a.src == src && a.tgt == tgt) {
                continue;
            }
            if rng.random_bool(0.2) {
                arrows.push(EiArrow {
                    src,
                    tgt,
                    biset: random_biset(rng, &groups[tgt], &groups[src], arrow_cap),
                });
            }
        }
    }
    EiQuiver::new(names, groups, arrows).expect("generated quiver is acyclic and well typed")
}

/// A random finite EI category: the free cover of a random quiver, retried
/// until the morphism count fits the cap. Every category produced this way
/// is free.
pub fn random_category<R: Rng>(rng: &mut R, limits: &GenLimits) -> FiniteCategory {
    loop {
        let q = random_ei_quiver(rng, limits);
        if let Ok(Some(cover)) = q.free_ei_cover_bounded(limits.max_cover_morphisms) {
            return cover.cat;
        }
    }
}

pub fn random_mat<R: Rng>(rng: &mut R, f: &Fq, rows: usize, cols: usize) -> Mat {
    if rows == 0 || cols == 0 {
        return Mat::zero(rows, cols);
    }
    Mat::from_rows(
        (0..rows).map(|_| (0..cols).map(|_| f.rand_elem(rng)).collect()).collect(),
    )
    .unwrap()
}

pub fn random_invertible_mat<R: Rng>(rng: &mut R, f: &Fq, n: usize) -> Mat {
    if n == 0 {
        return Mat::identity(0);
    }
    loop {
        let m = random_mat(rng, f, n, n);
        if m.is_invertible(f) {
            return m;
        }
    }
}

/// A random module over `g`: a permutation module, regular module or small
/// direct sum, conjugated by a random basis change so its origin is not
/// visible in the matrices.
pub fn random_module<R: Rng>(rng: &mut R, f: &Fq, g: &FiniteGroup, max_dim: usize) -> FqModule {
    loop {
        let base = match rng.random_range(0..4) {
            0 => FqModule::trivial(f, g),
            1 => FqModule::permutation_module(f, g, &random_subgroup(rng, g)),
            2 => FqModule::direct_sum(
                &FqModule::permutation_module(f, g, &random_subgroup(rng, g)),
                &FqModule::trivial(f, g),
            ),
            _ if g.order() <= max_dim => FqModule::regular(f, g),
            _ => FqModule::permutation_module(f, g, &g.full_subgroup()),
        };
        if base.dim() > max_dim {
            continue;
        }
        let p = random_invertible_mat(rng, f, base.dim());
        return base.conjugate(&p).expect("conjugation by an invertible matrix");
    }
}

/// The representation of `cat` that is `v` at object `x` and zero elsewhere;
/// cross maps are forced to zero by the dimensions, so this is always a
/// valid functor.
pub fn concentrated_rep(cat: &FiniteCategory, x: usize, v: &FqModule) -> CatRep {
    let aut = cat.aut_group(x);
    assert_eq!(v.group(), &aut.group, "module must live over Aut of the chosen object");
    let dims: Vec<usize> =
        (0..cat.n_objects()).map(|o| if o == x { v.dim() } else { 0 }).collect();
    let mats: Vec<Mat> = (0..cat.n_morphisms())
        .map(|m| {
            if cat.src(m) == x && cat.tgt(m) == x {
                v.mat_of_elem(aut.elem_of_mor[&m])
            } else {
                Mat::zero(dims[cat.tgt(m)], dims[cat.src(m)])
            }
        })
        .collect();
    CatRep::new(v.field().clone(), cat.clone(), dims, mats)
        .expect("concentrated representation is functorial")
}

/// `k` distinct object indices of `n`, sorted.
pub fn random_object_subset<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(pool.remove(rng.random_range(0..pool.len())));
    }
    out.sort_unstable();
    out
}
