//! Modular representations of finite groups over small finite fields:
//! permutation and regular modules, spinning, a Meataxe with certified
//! irreducibility, induction and restriction, tops and socles.

use rand::Rng;

use crate::field::{is_prime, Fq};
use crate::group::{FiniteGroup, Quotient, Subgroup};
use crate::matrix::{min_poly, Mat, RowSpace};
use crate::poly;
use crate::{Error, Result};

/// A finite-dimensional module over the group algebra, given by one matrix
/// per group generator (acting on column vectors).
#[derive(Clone)]
pub struct FqModule {
    field: Fq,
    group: FiniteGroup,
    dim: usize,
    gen_mats: Vec<Mat>,
}

impl std::fmt::Debug for FqModule {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "FqModule(dim {} over {:?}, group order {})", self.dim, self.field, self.group.order())
    }
}

impl FqModule {
    /// Build and fully validate: sizes, invertibility, and that the
    /// assignment extends to a group homomorphism.
    pub fn new(field: Fq, group: FiniteGroup, dim: usize, gen_mats: Vec<Mat>) -> Result<FqModule> {
        if gen_mats.len() != group.gens().len() {
            return Err(Error::Validation(
                "need exactly one matrix per group generator".into(),
            ));
        }
        for m in &gen_mats {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Validation(format!(
                    "generator matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_invertible(&field) {
                return Err(Error::Validation("generator matrix is singular".into()));
            }
        }
        let module = FqModule { field, group, dim, gen_mats };
        // The word-products define M(x) for every x; the assignment is a
        // homomorphism iff M(g)·M(x) = M(gx) for every generator g.
        let elem_mats: Vec<Mat> = (0..module.group.order()).map(|i| module.mat_of_elem(i)).collect();
        for (gi, gmat) in module.gen_mats.iter().enumerate() {
            let g = module.group.gen_indices()[gi];
            for x in 0..module.group.order() {
                let lhs = Mat::mul(&module.field, gmat, &elem_mats[x]);
                if lhs != elem_mats[module.group.mul(g, x)] {
                    return Err(Error::Validation(
                        "matrices do not satisfy the group relations".into(),
                    ));
                }
            }
        }
        Ok(module)
    }

    /// For matrices produced internally (already consistent by construction).
    pub(crate) fn new_unchecked(
        field: Fq,
        group: FiniteGroup,
        dim: usize,
        gen_mats: Vec<Mat>,
    ) -> FqModule {
        debug_assert_eq!(gen_mats.len(), group.gens().len());
        FqModule { field, group, dim, gen_mats }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gen_mats(&self) -> &[Mat] {
        &self.gen_mats
    }

    /// Representing matrix of an arbitrary element, from its generator word.
    pub fn mat_of_elem(&self, i: usize) -> Mat {
        let mut acc = Mat::identity(self.dim);
        for &w in self.group.word(i) {
            acc = Mat::mul(&self.field, &acc, &self.gen_mats[w as usize]);
        }
        acc
    }

    /// Trace of every element's matrix; an isomorphism invariant, and a
    /// complete one for simples over a splitting field.
    pub fn trace_vector(&self) -> Vec<u64> {
        (0..self.group.order()).map(|i| self.mat_of_elem(i).trace(&self.field)).collect()
    }

    pub fn trivial(field: &Fq, group: &FiniteGroup) -> FqModule {
        let gens = vec![Mat::identity(1); group.gens().len()];
        FqModule::new_unchecked(field.clone(), group.clone(), 1, gens)
    }

    /// Module of dimension zero.
    pub fn zero(field: &Fq, group: &FiniteGroup) -> FqModule {
        let gens = vec![Mat::zero(0, 0); group.gens().len()];
        FqModule::new_unchecked(field.clone(), group.clone(), 0, gens)
    }

    /// k[G/A]: permutation module on the left cosets of `a`.
    pub fn permutation_module(field: &Fq, group: &FiniteGroup, a: &Subgroup) -> FqModule {
        assert_eq!(a.parent(), group);
        let (reps, coset_of) = a.left_cosets();
        let n = reps.len();
        let gen_mats = group
            .gen_indices()
            .iter()
            .map(|&g| {
                let mut m = Mat::zero(n, n);
                for (c, &t) in reps.iter().enumerate() {
                    m.set(coset_of[group.mul(g, t)], c, 1);
                }
                m
            })
            .collect();
        FqModule::new_unchecked(field.clone(), group.clone(), n, gen_mats)
    }

    pub fn regular(field: &Fq, group: &FiniteGroup) -> FqModule {
        FqModule::permutation_module(field, group, &group.trivial_subgroup())
    }

    pub fn direct_sum(a: &FqModule, b: &FqModule) -> FqModule {
        assert_eq!(a.field, b.field);
        assert_eq!(a.group, b.group);
        let gens = a
            .gen_mats
            .iter()
            .zip(&b.gen_mats)
            .map(|(x, y)| Mat::direct_sum(x, y))
            .collect();
        FqModule::new_unchecked(a.field.clone(), a.group.clone(), a.dim + b.dim, gens)
    }

    /// Change of basis: v -> P v, so matrices become P M P^{-1}.
    pub fn conjugate(&self, p: &Mat) -> Result<FqModule> {
        let pinv = p
            .inverse(&self.field)
            .ok_or_else(|| Error::Precondition("change of basis must be invertible".into()))?;
        let gens = self
            .gen_mats
            .iter()
            .map(|m| Mat::mul(&self.field, &Mat::mul(&self.field, p, m), &pinv))
            .collect();
        Ok(FqModule::new_unchecked(self.field.clone(), self.group.clone(), self.dim, gens))
    }

    /// Restrict the action to an invariant subspace given by basis rows.
    pub fn submodule(&self, basis: &Mat) -> Result<FqModule> {
        let f = &self.field;
        let mut space = RowSpace::new(f, self.dim);
        for i in 0..basis.rows() {
            space.insert(basis.row(i));
        }
        let b = space.basis_matrix();
        let d = b.rows();
        let mut gens = Vec::with_capacity(self.gen_mats.len());
        for m in &self.gen_mats {
            let mut rows = Vec::with_capacity(d);
            for i in 0..d {
                let img = m.apply(f, b.row(i));
                let coords = space.coords(&img).ok_or_else(|| {
                    Error::Precondition("subspace is not invariant under the action".into())
                })?;
                rows.push(coords);
            }
            gens.push(Mat::from_rows(rows)?.transpose());
        }
        Ok(FqModule::new_unchecked(f.clone(), self.group.clone(), d, gens))
    }

    /// Action on the quotient by an invariant subspace (basis rows).
    pub fn quotient(&self, basis: &Mat) -> Result<FqModule> {
        let f = &self.field;
        let mut space = RowSpace::new(f, self.dim);
        for i in 0..basis.rows() {
            space.insert(basis.row(i));
        }
        let sub_dim = space.dim();
        let b = space.basis_matrix();
        // Complement coordinates: the non-pivot columns of the RREF basis.
        let mut is_pivot = vec![false; self.dim];
        for i in 0..sub_dim {
            let p = b.row(i).iter().position(|&x| x != 0).unwrap();
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.dim).filter(|&c| !is_pivot[c]).collect();
        let qdim = free.len();
        let project = |v: &[u64]| -> Vec<u64> {
            let mut w = v.to_vec();
            space.reduce(&mut w);
            free.iter().map(|&c| w[c]).collect()
        };
        let mut gens = Vec::with_capacity(self.gen_mats.len());
        for m in &self.gen_mats {
            let mut cols = Vec::with_capacity(qdim);
            for &c in &free {
                let mut e = vec![0u64; self.dim];
                e[c] = 1;
                cols.push(project(&m.apply(f, &e)));
            }
            let mut mat = Mat::zero(qdim, qdim);
            for (j, col) in cols.iter().enumerate() {
                for i in 0..qdim {
                    mat.set(i, j, col[i]);
                }
            }
            gens.push(mat);
        }
        // Invariance check: images of subspace basis vectors must reduce to zero.
        for m in &self.gen_mats {
            for i in 0..sub_dim {
                let img = project(&m.apply(f, b.row(i)));
                if img.iter().any(|&x| x != 0) {
                    return Err(Error::Precondition(
                        "subspace is not invariant under the action".into(),
                    ));
                }
            }
        }
        Ok(FqModule::new_unchecked(f.clone(), self.group.clone(), qdim, gens))
    }

    /// Restriction to a subgroup, as a module over `sub.as_group()`.
    pub fn restrict(&self, sub: &Subgroup) -> FqModule {
        assert_eq!(sub.parent(), &self.group);
        let grp = sub.as_group();
        let gens = grp
            .gens()
            .iter()
            .map(|p| {
                let parent_idx = self.group.elem_index(p).expect("subgroup element");
                self.mat_of_elem(parent_idx)
            })
            .collect();
        FqModule::new_unchecked(self.field.clone(), grp, self.dim, gens)
    }
}

/// Basis of the submodule generated by the seed vectors.
pub fn spin(m: &FqModule, seeds: &[Vec<u64>]) -> RowSpace {
    spin_with(m.field(), &m.gen_mats, m.dim, seeds)
}

/// Spin under the transposed action (the dual module's action up to
/// inversion, which generates the same invariant subspaces).
pub fn spin_transposed(m: &FqModule, seeds: &[Vec<u64>]) -> RowSpace {
    let t: Vec<Mat> = m.gen_mats.iter().map(Mat::transpose).collect();
    spin_with(m.field(), &t, m.dim, seeds)
}

fn spin_with(f: &Fq, mats: &[Mat], dim: usize, seeds: &[Vec<u64>]) -> RowSpace {
    let mut space = RowSpace::new(f, dim);
    let mut frontier: Vec<Vec<u64>> = Vec::new();
    for s in seeds {
        if space.insert(s) {
            frontier.push(s.clone());
        }
    }
    while let Some(v) = frontier.pop() {
        for m in mats {
            let w = m.apply(f, &v);
            if space.insert(&w) {
                frontier.push(w);
            }
        }
    }
    space
}

/// Basis of Hom_{kG}(a, b): matrices X with X·A(g) = B(g)·X for all g.
pub fn hom_space(a: &FqModule, b: &FqModule) -> Vec<Mat> {
    let sys = hom_system(a, b);
    let ker = sys.kernel(a.field());
    let mut out = Vec::with_capacity(ker.rows());
    for r in 0..ker.rows() {
        let mut x = Mat::zero(b.dim, a.dim);
        for i in 0..b.dim {
            for j in 0..a.dim {
                x.set(i, j, ker.row(r)[i * a.dim + j]);
            }
        }
        out.push(x);
    }
    out
}

pub fn hom_dim(a: &FqModule, b: &FqModule) -> usize {
    if a.dim == 0 || b.dim == 0 {
        return 0;
    }
    let sys = hom_system(a, b);
    a.dim * b.dim - sys.rank(a.field())
}

fn hom_system(a: &FqModule, b: &FqModule) -> Mat {
    assert_eq!(a.field, b.field);
    assert_eq!(a.group, b.group, "hom spaces need modules over one group");
    let f = &a.field;
    let (da, db) = (a.dim, b.dim);
    let ngen = a.gen_mats.len();
    if ngen == 0 {
        // Trivial group: every linear map is a homomorphism.
        return Mat::zero(1, da * db);
    }
    let mut sys = Mat::zero(ngen * da * db, da * db);
    let var = |i: usize, j: usize| i * da + j; // X[i][j], X is db x da
    for (g, (am, bm)) in a.gen_mats.iter().zip(&b.gen_mats).enumerate() {
        for i in 0..db {
            for j in 0..da {
                let row = g * da * db + i * da + j;
                // sum_k X[i,k] A[k,j] - sum_k B[i,k] X[k,j] = 0
                for k in 0..da {
                    let cur = sys.at(row, var(i, k));
                    sys.set(row, var(i, k), f.add(cur, am.at(k, j)));
                }
                for k in 0..db {
                    let cur = sys.at(row, var(k, j));
                    sys.set(row, var(k, j), f.sub(cur, bm.at(i, k)));
                }
            }
        }
    }
    sys
}

const MEATAXE_ATTEMPTS: usize = 200;

/// Composition factors, with multiplicity, in discovery order.
///
/// The splitting logic follows the Holt-Rees refinement of Norton's
/// criterion: for a random algebra element A and an irreducible factor f of
/// its minimal polynomial, any proper spin of a kernel vector of f(A) splits
/// the module; if the nullity of f(A) equals deg f, one full spin on the
/// kernel side plus one full transposed spin on the cokernel side certify
/// irreducibility exactly.
pub fn chop<R: Rng>(m: &FqModule, rng: &mut R) -> Result<Vec<FqModule>> {
    let mut out = Vec::new();
    chop_into(m, rng, &mut out)?;
    Ok(out)
}

fn chop_into<R: Rng>(m: &FqModule, rng: &mut R, out: &mut Vec<FqModule>) -> Result<()> {
    if m.dim == 0 {
        return Ok(());
    }
    if m.dim == 1 {
        out.push(m.clone());
        return Ok(());
    }
    let f = m.field();
    for attempt in 0..MEATAXE_ATTEMPTS {
        let a = random_algebra_element(m, rng, attempt);
        let mp = min_poly(f, &a);
        let factors = poly::factor(f, &mp, rng);
        // An irreducible minimal polynomial of full degree makes the space a
        // 1-dimensional vector space over k[A], so no proper invariant
        // subspaces exist at all.
        if factors.len() == 1 && factors[0].1 == 1 && poly::deg(&factors[0].0) == Some(m.dim) {
            out.push(m.clone());
            return Ok(());
        }
        for (fi, _) in &factors {
            let b = a.eval_poly(f, fi);
            let nullspace = b.kernel(f);
            if nullspace.rows() == 0 {
                continue;
            }
            // Any proper spin from the kernel splits the module.
            for r in 0..nullspace.rows() {
                let space = spin(m, &[nullspace.row(r).to_vec()]);
                if space.dim() < m.dim {
                    return split(m, &space.basis_matrix(), rng, out);
                }
            }
            // Dual side: a proper transposed spin yields a submodule as its
            // annihilator.
            let bt = b.transpose();
            let conull = bt.kernel(f);
            let good_nullspace = nullspace.rows() == poly::deg(fi).unwrap_or(usize::MAX);
            for r in 0..conull.rows() {
                let space = spin_transposed(m, &[conull.row(r).to_vec()]);
                if space.dim() < m.dim {
                    let ann = space.basis_matrix().kernel(f);
                    return split(m, &ann, rng, out);
                }
                if good_nullspace {
                    // One full transposed spin completes the certificate.
                    break;
                }
            }
            if good_nullspace {
                out.push(m.clone());
                return Ok(());
            }
            // Nullity exceeded deg f and every spin was full: inconclusive
            // for this factor; try the next one.
        }
    }
    Err(Error::Resource(format!(
        "meataxe did not certify a {}-dimensional module within {MEATAXE_ATTEMPTS} attempts",
        m.dim
    )))
}

fn split<R: Rng>(
    m: &FqModule,
    sub_basis: &Mat,
    rng: &mut R,
    out: &mut Vec<FqModule>,
) -> Result<()> {
    let sub = m.submodule(sub_basis)?;
    let quo = m.quotient(sub_basis)?;
    debug_assert_eq!(sub.dim + quo.dim, m.dim);
    chop_into(&sub, rng, out)?;
    chop_into(&quo, rng, out)
}

fn random_algebra_element<R: Rng>(m: &FqModule, rng: &mut R, attempt: usize) -> Mat {
    let f = m.field();
    let n = m.dim;
    let mut acc = Mat::zero(n, n);
    if m.gen_mats.is_empty() {
        return acc;
    }
    let max_len = 2 + attempt / 8;
    let terms = 1 + attempt % 3;
    for _ in 0..=terms {
        let len = 1 + rng.random_range(0..max_len);
        let mut word = Mat::identity(n);
        for _ in 0..len {
            let g = rng.random_range(0..m.gen_mats.len());
            word = Mat::mul(f, &word, &m.gen_mats[g]);
        }
        let c = f.rand_nonzero(rng);
        acc = Mat::add(f, &acc, &Mat::scale(f, &word, c));
    }
    // An occasional scalar shift decorrelates eigenvalues.
    if attempt % 2 == 1 {
        let c = f.rand_elem(rng);
        for i in 0..n {
            acc.set(i, i, f.add(acc.at(i, i), c));
        }
    }
    acc
}

/// All simple modules, one per isomorphism class, sorted by (dimension,
/// trace vector). Errors with [`Error::NotSplitting`] if some simple has
/// endomorphism ring bigger than the field.
pub fn simple_modules<R: Rng>(
    field: &Fq,
    group: &FiniteGroup,
    rng: &mut R,
) -> Result<Vec<FqModule>> {
    let reg = FqModule::regular(field, group);
    let factors = chop(&reg, rng)?;
    let mut reps: Vec<FqModule> = Vec::new();
    for fac in factors {
        // Nonzero hom between simples means isomorphic (Schur).
        if !reps.iter().any(|r| r.dim() == fac.dim() && hom_dim(r, &fac) > 0) {
            reps.push(fac);
        }
    }
    for s in &reps {
        let e = hom_dim(s, s);
        if e != 1 {
            return Err(Error::NotSplitting {
                q: field.q(),
                detail: format!(
                    "a simple module of dimension {} has endomorphism ring of dimension {e}",
                    s.dim()
                ),
            });
        }
    }
    reps.sort_by(|a, b| (a.dim(), a.trace_vector()).cmp(&(b.dim(), b.trace_vector())));
    Ok(reps)
}

/// Least prime l ≡ 1 (mod exponent lcm) avoiding `forbidden`; F_l then
/// contains enough roots of unity to split every listed group.
pub fn splitting_prime(groups: &[&FiniteGroup], forbidden: &[u64]) -> u64 {
    let m = groups.iter().fold(1u64, |acc, g| {
        let e = g.exponent() as u64;
        acc / gcd_u64(acc, e) * e
    });
    let mut l = 2u64;
    loop {
        // `1 % m` rather than 1: for exponent 1 every prime qualifies.
        if is_prime(l) && l % m == 1 % m && !forbidden.contains(&l) {
            return l;
        }
        l += 1;
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Smallest field of characteristic p that splits every listed group:
/// F_{p^e} with e the multiplicative order of p modulo the p'-part of the
/// exponent lcm.
pub fn splitting_field_char_p(p: u64, groups: &[&FiniteGroup]) -> Result<Fq> {
    if !is_prime(p) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    let mut m = groups.iter().fold(1u64, |acc, g| {
        let e = g.exponent() as u64;
        acc / gcd_u64(acc, e) * e
    });
    while m % p == 0 {
        m /= p;
    }
    let mut e = 1u32;
    let mut pk = p % m;
    while pk != 1 {
        pk = (pk * p) % m;
        e += 1;
        if e > 64 {
            return Err(Error::Resource("splitting field degree out of range".into()));
        }
    }
    Fq::extension(p, e)
}

/// Induced module k[G] ⊗_{k[A]} M for a module over `sub.as_group()`.
pub fn induce(parent: &FiniteGroup, sub: &Subgroup, m: &FqModule) -> Result<FqModule> {
    if sub.parent() != parent {
        return Err(Error::Precondition("subgroup belongs to a different group".into()));
    }
    if *m.group() != sub.as_group() {
        return Err(Error::Precondition(
            "module must be defined over the subgroup's standalone group".into(),
        ));
    }
    let f = m.field().clone();
    let (reps, coset_of) = sub.left_cosets();
    let r = reps.len();
    let d = m.dim();
    let dim = r * d;
    let mut gen_mats = Vec::with_capacity(parent.gens().len());
    for &g in &parent.gen_indices() {
        let mut mat = Mat::zero(dim, dim);
        for (i, &t) in reps.iter().enumerate() {
            let gt = parent.mul(g, t);
            let si = coset_of[gt];
            // g·t = t' a with t' = reps[si].
            let a = parent.mul(parent.inv(reps[si]), gt);
            let pos = sub.position_of(a).expect("a lies in the subgroup");
            let amat = m.mat_of_elem(pos);
            for row in 0..d {
                for col in 0..d {
                    let v = amat.at(row, col);
                    if v != 0 {
                        mat.set(si * d + row, i * d + col, v);
                    }
                }
            }
        }
        gen_mats.push(mat);
    }
    Ok(FqModule::new_unchecked(f, parent.clone(), dim, gen_mats))
}

/// Inflation along a quotient map: turn a module over `quot.group` (g1/g0)
/// into a module over `g1.as_group()`.
pub fn inflate(g1: &Subgroup, quot: &Quotient, u: &FqModule) -> FqModule {
    assert_eq!(u.group(), &quot.group);
    let grp = g1.as_group();
    let gens = grp
        .gens()
        .iter()
        .map(|p| {
            let parent_idx = g1.parent().elem_index(p).expect("generator lies in subgroup");
            let pos = g1.position_of(parent_idx).unwrap();
            u.mat_of_elem(quot.proj[pos])
        })
        .collect();
    FqModule::new_unchecked(u.field().clone(), grp, u.dim(), gens)
}

/// Transport a module across an isomorphism given elementwise:
/// `iso[i]` is the image in `target` of element i of `u.group()`.
pub fn transport(u: &FqModule, iso: &[usize], target: &FiniteGroup) -> FqModule {
    assert_eq!(iso.len(), u.group().order());
    assert_eq!(u.group().order(), target.order());
    let mut inv = vec![usize::MAX; target.order()];
    for (s, &t) in iso.iter().enumerate() {
        inv[t] = s;
    }
    let gens = target
        .gens()
        .iter()
        .map(|p| {
            let t = target.elem_index(p).unwrap();
            u.mat_of_elem(inv[t])
        })
        .collect();
    FqModule::new_unchecked(u.field().clone(), target.clone(), u.dim(), gens)
}

/// Multiplicity of each simple in the top M / rad M (splitting field).
pub fn top_multiplicities(m: &FqModule, simples: &[FqModule]) -> Vec<usize> {
    simples.iter().map(|s| hom_dim(m, s)).collect()
}

/// Multiplicity of each simple in the socle (splitting field).
pub fn socle_multiplicities(m: &FqModule, simples: &[FqModule]) -> Vec<usize> {
    simples.iter().map(|s| hom_dim(s, m)).collect()
}

/// The radical: intersection of the kernels of all homs onto simples.
pub fn radical_subspace(m: &FqModule, simples: &[FqModule]) -> Mat {
    let f = m.field();
    let mut stacked: Option<Mat> = None;
    for s in simples {
        for phi in hom_space(m, s) {
            stacked = Some(match stacked {
                None => phi,
                Some(prev) => Mat::vstack(&prev, &phi),
            });
        }
    }
    match stacked {
        None => Mat::identity(m.dim()),
        Some(sys) => sys.kernel(f),
    }
}

/// Modules are isomorphic iff the hom space contains an invertible element.
/// Searches randomly, then exhaustively for tiny spaces.
pub fn is_isomorphic<R: Rng>(a: &FqModule, b: &FqModule, rng: &mut R) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a.dim() == 0 {
        return Ok(true);
    }
    let f = a.field();
    let homs = hom_space(a, b);
    if homs.is_empty() {
        return Ok(false);
    }
    for phi in &homs {
        if phi.is_invertible(f) {
            return Ok(true);
        }
    }
    for _ in 0..64 {
        let mut cand = Mat::zero(b.dim(), a.dim());
        for phi in &homs {
            cand = Mat::add(f, &cand, &Mat::scale(f, phi, f.rand_elem(rng)));
        }
        if cand.is_invertible(f) {
            return Ok(true);
        }
    }
    // Exhaustive sweep when the space is small enough to enumerate.
    let combos = (f.q() as u128).checked_pow(homs.len() as u32);
    match combos {
        Some(total) if total <= 1 << 20 => {
            let mut idx = vec![0u64; homs.len()];
            loop {
                let mut cand = Mat::zero(b.dim(), a.dim());
                for (phi, &c) in homs.iter().zip(&idx) {
                    if c != 0 {
                        cand = Mat::add(f, &cand, &Mat::scale(f, phi, c));
                    }
                }
                if cand.is_invertible(f) {
                    return Ok(true);
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return Ok(false);
                    }
                    idx[k] += 1;
                    if idx[k] < f.q() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
        _ => Err(Error::Resource(
            "hom space too large for exhaustive isomorphism search".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0xabcdef)
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    fn sorted_dims(mods: &[FqModule]) -> Vec<usize> {
        let mut d: Vec<usize> = mods.iter().map(|m| m.dim()).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn regular_s3_composition_factors() {
        // Frozen classical facts about k[S3].
        let g = s3();
        let f7 = Fq::prime(7).unwrap();
        let facs = chop(&FqModule::regular(&f7, &g), &mut rng()).unwrap();
        assert_eq!(sorted_dims(&facs), vec![1, 1, 2, 2]);

        let f3 = Fq::prime(3).unwrap();
        let facs = chop(&FqModule::regular(&f3, &g), &mut rng()).unwrap();
        assert_eq!(sorted_dims(&facs), vec![1, 1, 1, 1, 1, 1]);

        let f2 = Fq::prime(2).unwrap();
        let facs = chop(&FqModule::regular(&f2, &g), &mut rng()).unwrap();
        assert_eq!(sorted_dims(&facs), vec![1, 1, 2, 2]);
    }

    #[test]
    fn simple_modules_of_s3() {
        let g = s3();
        let f7 = Fq::prime(7).unwrap();
        let simples = simple_modules(&f7, &g, &mut rng()).unwrap();
        assert_eq!(sorted_dims(&simples), vec![1, 1, 2]);
        // Sum of squares is the group order (semisimple splitting field).
        let sq: usize = simples.iter().map(|s| s.dim() * s.dim()).sum();
        assert_eq!(sq, 6);

        let f2 = Fq::prime(2).unwrap();
        let simples2 = simple_modules(&f2, &g, &mut rng()).unwrap();
        assert_eq!(sorted_dims(&simples2), vec![1, 2]);

        let f3 = Fq::prime(3).unwrap();
        let simples3 = simple_modules(&f3, &g, &mut rng()).unwrap();
        assert_eq!(sorted_dims(&simples3), vec![1, 1]);
    }

    #[test]
    fn f5_is_not_splitting_for_c4_but_extension_is() {
        // C4 over F3: x^4 - 1 = (x-1)(x+1)(x^2+1), so a 2-dimensional simple
        // with endomorphism field F9 appears.
        let c4 = FiniteGroup::cyclic(4);
        let f3 = Fq::prime(3).unwrap();
        match simple_modules(&f3, &c4, &mut rng()) {
            Err(Error::NotSplitting { q: 3, .. }) => {}
            other => panic!("expected NotSplitting, got {other:?}"),
        }
        let f9 = Fq::extension(3, 2).unwrap();
        let simples = simple_modules(&f9, &c4, &mut rng()).unwrap();
        assert_eq!(sorted_dims(&simples), vec![1, 1, 1, 1]);
    }

    #[test]
    fn splitting_prime_frozen_values() {
        let s3 = s3();
        let c2 = FiniteGroup::cyclic(2);
        let v4 = FiniteGroup::direct_product(&c2, &c2);
        let triv = FiniteGroup::trivial(1);
        assert_eq!(splitting_prime(&[&s3], &[]), 7);
        assert_eq!(splitting_prime(&[&c2], &[]), 3);
        assert_eq!(splitting_prime(&[&v4], &[]), 3);
        assert_eq!(splitting_prime(&[&triv], &[]), 2);
        assert_eq!(splitting_prime(&[&s3, &c2], &[]), 7);
        assert_eq!(splitting_prime(&[&s3], &[7]), 13);
    }

    #[test]
    fn splitting_field_char_p() {
        // C4 in characteristic 3 needs F9 (order of 3 mod 4 is 2).
        let c4 = FiniteGroup::cyclic(4);
        let f = super::splitting_field_char_p(3, &[&c4]).unwrap();
        assert_eq!(f.q(), 9);
        // S3 in characteristic 5: 5 ≡ -1 mod 6... order of 5 mod 6 is 2.
        let f = super::splitting_field_char_p(5, &[&s3()]).unwrap();
        assert_eq!(f.q(), 25);
        // S3 in characteristic 7: 7 ≡ 1 mod 6, prime field suffices.
        let f = super::splitting_field_char_p(7, &[&s3()]).unwrap();
        assert_eq!(f.q(), 7);
    }

    #[test]
    fn hom_dims_and_schur() {
        let g = s3();
        let f7 = Fq::prime(7).unwrap();
        let reg = FqModule::regular(&f7, &g);
        // End(kG) has dimension |G|.
        assert_eq!(hom_dim(&reg, &reg), 6);
        let simples = simple_modules(&f7, &g, &mut rng()).unwrap();
        for (i, a) in simples.iter().enumerate() {
            for (j, b) in simples.iter().enumerate() {
                assert_eq!(hom_dim(a, b), usize::from(i == j));
            }
        }
    }

    #[test]
    fn induction_and_frobenius_reciprocity() {
        let g = s3();
        let f7 = Fq::prime(7).unwrap();
        // A = C2 generated by a transposition.
        let t = (0..6).find(|&i| g.element_order(i) == 2).unwrap();
        let a = g.subgroup_generated(&[t]);
        let triv_a = FqModule::trivial(&f7, &a.as_group());
        let ind = induce(&g, &a, &triv_a).unwrap();
        assert_eq!(ind.dim(), 3);
        // dim Hom_G(Ind k, S) = dim Hom_A(k, Res S) for each simple S.
        let simples = simple_modules(&f7, &g, &mut rng()).unwrap();
        for s in &simples {
            let lhs = hom_dim(&ind, s);
            let rhs = hom_dim(&triv_a, &s.restrict(&a));
            assert_eq!(lhs, rhs);
        }
        // Ind k from C2 is the permutation module on 3 points.
        let perm = FqModule::permutation_module(&f7, &g, &a);
        assert!(is_isomorphic(&ind, &perm, &mut rng()).unwrap());
    }

    #[test]
    fn top_of_regular_lists_every_simple_with_its_dimension() {
        let g = s3();
        for p in [2u64, 3, 7] {
            let f = Fq::prime(p).unwrap();
            let simples = simple_modules(&f, &g, &mut rng()).unwrap();
            let reg = FqModule::regular(&f, &g);
            let tops = top_multiplicities(&reg, &simples);
            let dims: Vec<usize> = simples.iter().map(|s| s.dim()).collect();
            assert_eq!(tops, dims);
        }
    }

    #[test]
    fn radical_of_regular_kc2_in_char_2() {
        let c2 = FiniteGroup::cyclic(2);
        let f2 = Fq::prime(2).unwrap();
        let reg = FqModule::regular(&f2, &c2);
        let simples = simple_modules(&f2, &c2, &mut rng()).unwrap();
        assert_eq!(simples.len(), 1);
        let rad = radical_subspace(&reg, &simples);
        assert_eq!(rad.rows(), 1);
        // In char 2 the nontrivial uniserial structure: top and socle both k.
        assert_eq!(top_multiplicities(&reg, &simples), vec![1]);
        assert_eq!(socle_multiplicities(&reg, &simples), vec![1]);
    }

    #[test]
    fn inflation_through_s3_mod_c3() {
        let g = s3();
        let f7 = Fq::prime(7).unwrap();
        let three = (0..6).find(|&i| g.element_order(i) == 3).unwrap();
        let c3 = g.subgroup_generated(&[three]);
        let full = g.full_subgroup();
        let quot = Quotient::new(&full, &c3).unwrap();
        // The nontrivial character of the C2 quotient.
        let qgrp = quot.group.clone();
        let sgn_mat = vec![Mat::from_rows(vec![vec![6]]).unwrap(); qgrp.gens().len()];
        let sgn = FqModule::new(f7.clone(), qgrp, 1, sgn_mat).unwrap();
        let inflated = inflate(&full, &quot, &sgn);
        // Inflation is the sign representation of S3.
        let traces = inflated.trace_vector();
        for i in 0..6 {
            let expected = if g.element_order(i) == 2 { 6 } else { 1 };
            assert_eq!(traces[i], expected, "element {i}");
        }
    }

    #[test]
    fn restriction_of_the_2_dim_simple_to_c3() {
        let g = s3();
        let f7 = Fq::prime(7).unwrap();
        let simples = simple_modules(&f7, &g, &mut rng()).unwrap();
        let std = simples.iter().find(|s| s.dim() == 2).unwrap();
        let three = (0..6).find(|&i| g.element_order(i) == 3).unwrap();
        let c3 = g.subgroup_generated(&[three]);
        let res = std.restrict(&c3);
        let facs = chop(&res, &mut rng()).unwrap();
        assert_eq!(sorted_dims(&facs), vec![1, 1]);
        // The two eigencharacters are the nontrivial cube roots of unity.
        let triv_c3 = FqModule::trivial(&f7, &c3.as_group());
        assert_eq!(hom_dim(&triv_c3, &res), 0);
    }

    #[test]
    fn module_validation_rejects_bad_relations() {
        let c2 = FiniteGroup::cyclic(2);
        let f5 = Fq::prime(5).unwrap();
        // A matrix of order 4 cannot represent an involution.
        let m = Mat::from_rows(vec![vec![0, 4], vec![1, 0]]).unwrap();
        assert!(FqModule::new(f5.clone(), c2.clone(), 2, vec![m]).is_err());
        let ok = Mat::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(FqModule::new(f5, c2, 2, vec![ok]).is_ok());
    }

    #[test]
    fn transport_preserves_traces() {
        // Transport the sign rep of C2 across the identity map.
        let c2 = FiniteGroup::cyclic(2);
        let f5 = Fq::prime(5).unwrap();
        let sgn =
            FqModule::new(f5, c2.clone(), 1, vec![Mat::from_rows(vec![vec![4]]).unwrap()]).unwrap();
        let moved = transport(&sgn, &[0, 1], &c2);
        assert_eq!(moved.trace_vector(), sgn.trace_vector());
    }
}
