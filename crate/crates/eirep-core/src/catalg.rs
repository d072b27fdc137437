//! Representations of finite EI categories: a module over the category
//! algebra kC, stored as one matrix per morphism (functor into matrices,
//! acting on column vectors).

use std::collections::{HashMap, HashSet};

use rand::Rng;

use crate::category::{AutGroup, FiniteCategory};
use crate::field::Fq;
use crate::matrix::Mat;
use crate::modrep::{self, FqModule};
use crate::{Error, Result};

#[derive(Clone)]
pub struct CatRep {
    field: Fq,
    cat: FiniteCategory,
    dims: Vec<usize>,
    mats: Vec<Mat>,
}

impl CatRep {
    /// Validates shapes, identity matrices and full functoriality, so a
    /// constructed value is always an honest kC-module.
    pub fn new(field: Fq, cat: FiniteCategory, dims: Vec<usize>, mats: Vec<Mat>) -> Result<CatRep> {
        if dims.len() != cat.n_objects() {
            return Err(Error::Validation("need one dimension per object".into()));
        }
        if mats.len() != cat.n_morphisms() {
            return Err(Error::Validation("need one matrix per morphism".into()));
        }
        for (m, mat) in mats.iter().enumerate() {
            if mat.rows() != dims[cat.tgt(m)] || mat.cols() != dims[cat.src(m)] {
                return Err(Error::Validation(format!(
                    "matrix of {} has the wrong shape",
                    cat.mor_name(m)
                )));
            }
            if mat.entries().iter().any(|&v| v >= field.q()) {
                return Err(Error::Validation("matrix entry outside the field".into()));
            }
        }
        for x in 0..cat.n_objects() {
            if !mats[cat.identity(x)].is_identity() {
                return Err(Error::Validation(format!(
                    "identity of {} does not act as the identity matrix",
                    cat.object_name(x)
                )));
            }
        }
        let n = cat.n_morphisms();
        for f in 0..n {
            for g in 0..n {
                let Some(h) = cat.compose(f, g) else { continue };
                if mats[h] != Mat::mul(&field, &mats[f], &mats[g]) {
                    return Err(Error::Validation(format!(
                        "functoriality fails on ({}, {})",
                        cat.mor_name(f),
                        cat.mor_name(g)
                    )));
                }
            }
        }
        Ok(CatRep { field, cat, dims, mats })
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn cat(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mat(&self, m: usize) -> &Mat {
        &self.mats[m]
    }

    /// The value at an object as a module over its automorphism group.
    pub fn module_at(&self, aut: &AutGroup) -> Result<FqModule> {
        let gens = aut
            .group
            .gen_indices()
            .iter()
            .map(|&gi| self.mats[aut.mor_of_elem[gi]].clone())
            .collect();
        FqModule::new(self.field.clone(), aut.group.clone(), self.dims[aut.object], gens)
    }

    /// Restriction to a full subcategory.
    pub fn restrict_to_objects(&self, objects: &[usize]) -> Result<(FiniteCategory, CatRep)> {
        let (sub, objs, mor_map) = self.cat.full_subcategory(objects)?;
        let dims = objs.iter().map(|&x| self.dims[x]).collect();
        let mats = mor_map.iter().map(|&m| self.mats[m].clone()).collect();
        let rep = CatRep::new(self.field.clone(), sub.clone(), dims, mats)?;
        Ok((sub, rep))
    }

    /// Restriction along a subcategory inclusion that need not be full,
    /// given in the same format as [`induce_rep_along`].
    pub fn restrict_along(
        &self,
        sub: &FiniteCategory,
        objects: &[usize],
        mor_map: &[usize],
    ) -> Result<CatRep> {
        validate_embedding(&self.cat, sub, objects, mor_map)?;
        let dims = objects.iter().map(|&x| self.dims[x]).collect();
        let mats = mor_map.iter().map(|&m| self.mats[m].clone()).collect();
        CatRep::new(self.field.clone(), sub.clone(), dims, mats)
    }
}

/// Structural identity of two presented categories (same names, same
/// endpoints, same table).
pub fn same_presentation(a: &FiniteCategory, b: &FiniteCategory) -> bool {
    if a.object_names() != b.object_names() || a.n_morphisms() != b.n_morphisms() {
        return false;
    }
    let n = a.n_morphisms();
    for m in 0..n {
        if a.src(m) != b.src(m) || a.tgt(m) != b.tgt(m) || a.mor_name(m) != b.mor_name(m) {
            return false;
        }
    }
    if (0..a.n_objects()).any(|x| a.identity(x) != b.identity(x)) {
        return false;
    }
    for f in 0..n {
        for g in 0..n {
            if a.compose(f, g) != b.compose(f, g) {
                return false;
            }
        }
    }
    true
}

/// Quotient of F^n by the row space of the given relations; returns the
/// projection onto free coordinates and a section of it.
fn quotient_maps(f: &Fq, n: usize, rel_rows: Vec<Vec<u64>>) -> (Mat, Mat) {
    if rel_rows.is_empty() {
        return (Mat::identity(n), Mat::identity(n));
    }
    let mut r = Mat::from_rows(rel_rows).expect("rectangular relation matrix");
    let pivots = r.rref(f);
    let piv: HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    let mut p = Mat::zero(free.len(), n);
    for (fi, &c) in free.iter().enumerate() {
        p.set(fi, c, 1);
    }
    for (ri, &pc) in pivots.iter().enumerate() {
        for (fi, &c) in free.iter().enumerate() {
            let v = r.at(ri, c);
            if v != 0 {
                p.set(fi, pc, f.neg(v));
            }
        }
    }
    let mut s = Mat::zero(n, free.len());
    for (fi, &c) in free.iter().enumerate() {
        s.set(c, fi, 1);
    }
    (p, s)
}

/// Checks that `objects` and `mor_map` describe a functor from `sub` into
/// `parent` that is injective on objects and on morphisms: endpoints line
/// up, identities go to identities and the composition tables agree.
fn validate_embedding(
    parent: &FiniteCategory,
    sub: &FiniteCategory,
    objects: &[usize],
    mor_map: &[usize],
) -> Result<()> {
    if objects.len() != sub.n_objects() || mor_map.len() != sub.n_morphisms() {
        return Err(Error::Precondition(
            "embedding data does not match the subcategory".into(),
        ));
    }
    if objects.iter().any(|&x| x >= parent.n_objects())
        || objects.iter().collect::<HashSet<_>>().len() != objects.len()
    {
        return Err(Error::Precondition(
            "object images must be distinct parent objects".into(),
        ));
    }
    if mor_map.iter().any(|&m| m >= parent.n_morphisms())
        || mor_map.iter().collect::<HashSet<_>>().len() != mor_map.len()
    {
        return Err(Error::Precondition(
            "morphism images must be distinct parent morphisms".into(),
        ));
    }
    for dm in 0..sub.n_morphisms() {
        if parent.src(mor_map[dm]) != objects[sub.src(dm)]
            || parent.tgt(mor_map[dm]) != objects[sub.tgt(dm)]
        {
            return Err(Error::Precondition(format!(
                "image of {} has the wrong endpoints",
                sub.mor_name(dm)
            )));
        }
    }
    for x in 0..sub.n_objects() {
        if mor_map[sub.identity(x)] != parent.identity(objects[x]) {
            return Err(Error::Precondition(format!(
                "identity of {} is not sent to an identity",
                sub.object_name(x)
            )));
        }
    }
    for f in 0..sub.n_morphisms() {
        for g in 0..sub.n_morphisms() {
            let Some(h) = sub.compose(f, g) else { continue };
            if parent.compose(mor_map[f], mor_map[g]) != Some(mor_map[h]) {
                return Err(Error::Precondition(format!(
                    "composite of ({}, {}) is not preserved",
                    sub.mor_name(f),
                    sub.mor_name(g)
                )));
            }
        }
    }
    Ok(())
}

/// Tensor induction kC ⊗_{kD} M along the inclusion of the full subcategory
/// D on `objects`. Works for any shape of EI category; the value at y is the
/// direct sum of k[C(x, y)] ⊗ M_x over the chosen objects, modulo the
/// bimodule balancing relations (m∘d) ⊗ v = m ⊗ M(d)v.
pub fn induce_rep(parent: &FiniteCategory, objects: &[usize], rep: &CatRep) -> Result<CatRep> {
    let (sub, objs, mor_map) = parent.full_subcategory(objects)?;
    if !same_presentation(&sub, rep.cat()) {
        return Err(Error::Precondition(
            "representation is not over the chosen full subcategory".into(),
        ));
    }
    induce_along_impl(parent, &objs, &mor_map, rep)
}

/// Tensor induction along a subcategory that need not be full. The embedding
/// sends object i of the module's category to `objects[i]` and morphism dm to
/// `mor_map[dm]`; omitted parent morphisms contribute no balancing relation,
/// so dropping automorphisms enlarges (or keeps) the induced module.
pub fn induce_rep_along(
    parent: &FiniteCategory,
    objects: &[usize],
    mor_map: &[usize],
    rep: &CatRep,
) -> Result<CatRep> {
    validate_embedding(parent, rep.cat(), objects, mor_map)?;
    induce_along_impl(parent, objects, mor_map, rep)
}

fn induce_along_impl(
    parent: &FiniteCategory,
    objs: &[usize],
    mor_map: &[usize],
    rep: &CatRep,
) -> Result<CatRep> {
    let sub = rep.cat();
    let f = rep.field.clone();
    let n_par = parent.n_objects();

    let mut col_of: Vec<HashMap<(usize, usize), usize>> = vec![HashMap::new(); n_par];
    let mut list: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_par];
    for y in 0..n_par {
        for (xi, &x) in objs.iter().enumerate() {
            for &m in parent.hom(x, y) {
                for i in 0..rep.dims[xi] {
                    col_of[y].insert((m, i), list[y].len());
                    list[y].push((m, i));
                }
            }
        }
    }

    let mut proj = Vec::with_capacity(n_par);
    let mut sect = Vec::with_capacity(n_par);
    for y in 0..n_par {
        let cols = list[y].len();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for dm in 0..sub.n_morphisms() {
            if dm == sub.identity(sub.src(dm)) {
                continue;
            }
            let xs = sub.src(dm);
            let xt = sub.tgt(dm);
            let d_par = mor_map[dm];
            let rho = &rep.mats[dm];
            for &m in parent.hom(objs[xt], y) {
                let md = parent.compose(m, d_par).expect("composable by construction");
                for i in 0..rep.dims[xs] {
                    let mut row = vec![0u64; cols];
                    let c1 = col_of[y][&(md, i)];
                    row[c1] = f.add(row[c1], 1);
                    for j in 0..rep.dims[xt] {
                        let c = col_of[y][&(m, j)];
                        row[c] = f.sub(row[c], rho.at(j, i));
                    }
                    rows.push(row);
                }
            }
        }
        let (p, s) = quotient_maps(&f, cols, rows);
        proj.push(p);
        sect.push(s);
    }

    let mut mats = Vec::with_capacity(parent.n_morphisms());
    for c in 0..parent.n_morphisms() {
        let (y, z) = (parent.src(c), parent.tgt(c));
        let mut t = Mat::zero(list[z].len(), list[y].len());
        for (col, &(m, i)) in list[y].iter().enumerate() {
            let cm = parent.compose(c, m).expect("composable by construction");
            t.set(col_of[z][&(cm, i)], col, 1);
        }
        mats.push(Mat::mul(&f, &proj[z], &Mat::mul(&f, &t, &sect[y])));
    }
    let dims: Vec<usize> = proj.iter().map(Mat::rows).collect();
    CatRep::new(f, parent.clone(), dims, mats)
}

/// Direction of the unique cross hom-set of a two-object category.
fn two_object_direction(cat: &FiniteCategory) -> Result<(usize, usize)> {
    if cat.n_objects() != 2 {
        return Err(Error::Precondition("expected a category with exactly two objects".into()));
    }
    match (cat.hom(0, 1).is_empty(), cat.hom(1, 0).is_empty()) {
        (false, true) => Ok((0, 1)),
        (true, false) => Ok((1, 0)),
        (true, true) => Err(Error::Precondition("the two objects are not connected".into())),
        (false, false) => Err(Error::Precondition("not a skeletal EI category".into())),
    }
}

/// Induction from the source object of a two-object EI category, computed
/// through the stabilizer chain instead of the balancing quotient.
///
/// Requires Aut(y) to act transitively on C(x, y). Writing alpha for the
/// base morphism, G0 for its stabilizer in G = Aut(x) and H1 for the
/// setwise stabilizer of alpha·G in H = Aut(y), the hom-set decomposes as
/// H ×_{H1} (alpha·G), so the induced value at y is the H-module induced
/// from the G0-coinvariants of V, with H1 acting through right witnesses.
pub fn induce_two_object_fastpath(parent: &FiniteCategory, v: &FqModule) -> Result<CatRep> {
    let (x, y) = two_object_direction(parent)?;
    let ax = parent.aut_group(x);
    let ay = parent.aut_group(y);
    if v.group() != &ax.group {
        return Err(Error::Precondition(
            "module must live over the source automorphism group".into(),
        ));
    }
    let f = v.field().clone();
    let hb = parent.hom_biset(x, y, &ax, &ay)?;
    if !hb.biset.left_transitive() {
        return Err(Error::Precondition(
            "fastpath needs the target automorphisms to act transitively on the hom-set".into(),
        ));
    }
    let alpha = 0usize;
    let g0 = hb.biset.right_stabilizer(alpha);
    let h1 = hb.biset.left_orbit_setwise_stab(alpha);

    // Coinvariants V_{G0}.
    let mut rows = Vec::new();
    for &g in g0.elems() {
        if g == 0 {
            continue;
        }
        let rho = v.mat_of_elem(g);
        for i in 0..v.dim() {
            let mut row = vec![0u64; v.dim()];
            for j in 0..v.dim() {
                row[j] = rho.at(j, i);
            }
            row[i] = f.sub(row[i], 1);
            rows.push(row);
        }
    }
    let (p, s) = quotient_maps(&f, v.dim(), rows);
    let dim_u = p.rows();

    let h1_group = h1.as_group();
    let mut u_gens = Vec::new();
    for perm in h1_group.gens() {
        let h_idx = ay
            .group
            .elem_index(perm)
            .ok_or_else(|| Error::Structure("subgroup generator missing from parent".into()))?;
        let g = hb.biset.witness_right(alpha, h_idx).ok_or_else(|| {
            Error::Structure("no right witness for an orbit-stabilizer element".into())
        })?;
        u_gens.push(Mat::mul(&f, &Mat::mul(&f, &p, &v.mat_of_elem(g)), &s));
    }
    let u = FqModule::new(f.clone(), h1_group, dim_u, u_gens)?;
    let w = modrep::induce(&ay.group, &h1, &u)?;

    // Embed U as the identity-coset block of W, then translate.
    let mut embed = Mat::zero(w.dim(), dim_u);
    for i in 0..dim_u {
        embed.set(i, i, 1);
    }
    let base = Mat::mul(&f, &embed, &p);

    let mut dims = vec![0usize; 2];
    dims[x] = v.dim();
    dims[y] = w.dim();
    let mut mats = Vec::with_capacity(parent.n_morphisms());
    for m in 0..parent.n_morphisms() {
        if parent.src(m) == x && parent.tgt(m) == x {
            mats.push(v.mat_of_elem(ax.elem_of_mor[&m]));
        } else if parent.src(m) == y && parent.tgt(m) == y {
            mats.push(w.mat_of_elem(ay.elem_of_mor[&m]));
        } else {
            let pos = hb.position_of_mor(m).expect("cross morphism lies in the hom-set");
            let h = (0..ay.group.order())
                .find(|&h| hb.biset.left_act(h, alpha) == pos)
                .expect("transitive action");
            mats.push(Mat::mul(&f, &w.mat_of_elem(h), &base));
        }
    }
    CatRep::new(f, parent.clone(), dims, mats)
}

/// Assemble a representation of a two-object EI category from modules at
/// both objects plus one connecting matrix per two-sided orbit of the
/// hom-set. Every cross morphism h∘alpha∘g receives rho_W(h)·phi·rho_V(g)
/// using the lexicographically least witness pair (h, g); validation then
/// decides whether the chosen matrices extend to a representation at all.
pub fn rep_from_witness(
    parent: &FiniteCategory,
    v: &FqModule,
    w: &FqModule,
    phis: &[Mat],
) -> Result<CatRep> {
    let (x, y) = two_object_direction(parent)?;
    let ax = parent.aut_group(x);
    let ay = parent.aut_group(y);
    if v.group() != &ax.group || w.group() != &ay.group {
        return Err(Error::Precondition("modules must live over the automorphism groups".into()));
    }
    if v.field() != w.field() {
        return Err(Error::Precondition("modules over different fields".into()));
    }
    let f = v.field().clone();
    let hb = parent.hom_biset(x, y, &ax, &ay)?;
    let orbits = hb.biset.two_sided_orbits();
    if phis.len() != orbits.len() {
        return Err(Error::Precondition(format!(
            "need one connecting matrix per two-sided orbit ({} orbits)",
            orbits.len()
        )));
    }
    for phi in phis {
        if phi.rows() != w.dim() || phi.cols() != v.dim() {
            return Err(Error::Precondition("connecting matrix has the wrong shape".into()));
        }
    }

    let mut cross_mats: HashMap<usize, Mat> = HashMap::new();
    for (k, orbit) in orbits.iter().enumerate() {
        let alpha = orbit[0];
        for &pos in orbit {
            let mut found = None;
            'search: for h in 0..ay.group.order() {
                for g in 0..ax.group.order() {
                    if hb.biset.left_act(h, hb.biset.right_act(alpha, g)) == pos {
                        found = Some((h, g));
                        break 'search;
                    }
                }
            }
            let (h, g) = found.expect("orbit point reachable from its representative");
            let mat =
                Mat::mul(&f, &w.mat_of_elem(h), &Mat::mul(&f, &phis[k], &v.mat_of_elem(g)));
            cross_mats.insert(hb.carrier[pos], mat);
        }
    }

    let mut dims = vec![0usize; 2];
    dims[x] = v.dim();
    dims[y] = w.dim();
    let mats: Vec<Mat> = (0..parent.n_morphisms())
        .map(|m| {
            if parent.src(m) == x && parent.tgt(m) == x {
                v.mat_of_elem(ax.elem_of_mor[&m])
            } else if parent.src(m) == y && parent.tgt(m) == y {
                w.mat_of_elem(ay.elem_of_mor[&m])
            } else {
                cross_mats.remove(&m).expect("every cross morphism was assigned")
            }
        })
        .collect();
    CatRep::new(f, parent.clone(), dims, mats)
}

/// Basis of the space of natural transformations a => b, one matrix per
/// object for each basis element.
pub fn catrep_hom_space(a: &CatRep, b: &CatRep) -> Result<Vec<Vec<Mat>>> {
    if !same_presentation(a.cat(), b.cat()) {
        return Err(Error::Precondition("representations over different categories".into()));
    }
    if a.field != b.field {
        return Err(Error::Precondition("representations over different fields".into()));
    }
    let f = &a.field;
    let n_obj = a.cat.n_objects();
    let mut offset = vec![0usize; n_obj + 1];
    for x in 0..n_obj {
        offset[x + 1] = offset[x] + b.dims[x] * a.dims[x];
    }
    let total = offset[n_obj];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for m in 0..a.cat.n_morphisms() {
        let (x, y) = (a.cat.src(m), a.cat.tgt(m));
        let am = a.mat(m);
        let bm = b.mat(m);
        // N_y A(m) = B(m) N_x, entrywise over (r, c).
        for r in 0..b.dims[y] {
            for c in 0..a.dims[x] {
                let mut row = vec![0u64; total];
                for j in 0..a.dims[y] {
                    let var = offset[y] + r * a.dims[y] + j;
                    row[var] = f.add(row[var], am.at(j, c));
                }
                for i in 0..b.dims[x] {
                    let var = offset[x] + i * a.dims[x] + c;
                    row[var] = f.sub(row[var], bm.at(r, i));
                }
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    let system = if rows.is_empty() {
        Mat::zero(1, total)
    } else {
        Mat::from_rows(rows)?
    };
    let ker = system.kernel(f);
    let mut basis = Vec::new();
    for bi in 0..ker.rows() {
        let mut per_obj = Vec::with_capacity(n_obj);
        for x in 0..n_obj {
            let mut n = Mat::zero(b.dims[x], a.dims[x]);
            for i in 0..b.dims[x] {
                for j in 0..a.dims[x] {
                    n.set(i, j, ker.at(bi, offset[x] + i * a.dims[x] + j));
                }
            }
            per_obj.push(n);
        }
        basis.push(per_obj);
    }
    Ok(basis)
}

pub fn catrep_hom_dim(a: &CatRep, b: &CatRep) -> Result<usize> {
    Ok(catrep_hom_space(a, b)?.len())
}

/// Isomorphism test: random combinations of the hom basis, then exhaustive
/// enumeration when the search space is small enough.
pub fn catrep_is_isomorphic<R: Rng>(a: &CatRep, b: &CatRep, rng: &mut R) -> Result<bool> {
    if !same_presentation(a.cat(), b.cat()) || a.field != b.field {
        return Ok(false);
    }
    if a.dims != b.dims {
        return Ok(false);
    }
    if a.total_dim() == 0 {
        return Ok(true);
    }
    let basis = catrep_hom_space(a, b)?;
    if basis.is_empty() {
        return Ok(false);
    }
    let f = &a.field;
    let n_obj = a.cat.n_objects();
    let invertible = |combo: &[u64]| -> bool {
        (0..n_obj).all(|x| {
            if a.dims[x] == 0 {
                return true;
            }
            let mut n = Mat::zero(b.dims[x], a.dims[x]);
            for (bi, &coef) in combo.iter().enumerate() {
                if coef != 0 {
                    n = Mat::add(f, &n, &Mat::scale(f, &basis[bi][x], coef));
                }
            }
            n.inverse(f).is_some()
        })
    };
    let k = basis.len();
    for _ in 0..64 {
        let combo: Vec<u64> = (0..k).map(|_| f.rand_elem(rng)).collect();
        if invertible(&combo) {
            return Ok(true);
        }
    }
    // Exhaustive sweep over all coefficient vectors.
    let space = (f.q() as u128).checked_pow(k as u32);
    match space {
        Some(total) if total <= 1 << 20 => {
            let mut combo = vec![0u64; k];
            for code in 1..total {
                let mut c = code;
                for slot in combo.iter_mut() {
                    *slot = (c % f.q() as u128) as u64;
                    c /= f.q() as u128;
                }
                if invertible(&combo) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        _ => Err(Error::Resource(
            "isomorphism search space too large for exhaustive fallback".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::Biset;
    use crate::category::MorInfo;
    use crate::eiquiver::{EiArrow, EiQuiver};
    use crate::group::FiniteGroup;
    use crate::perm::Perm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(919)
    }

    /// Two objects, trivial group at x, C2 at y, hom-set of size 2 swapped
    /// by the C2.
    fn swap_pair_category() -> FiniteCategory {
        let triv = FiniteGroup::trivial(1);
        let c2 = FiniteGroup::cyclic(2);
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let biset = Biset::new(
            c2.clone(),
            triv.clone(),
            2,
            vec![Perm::identity(2), swap],
            vec![Perm::identity(2)],
        )
        .unwrap();
        let q = EiQuiver::new(
            vec!["x".into(), "y".into()],
            vec![triv, c2],
            vec![EiArrow { src: 0, tgt: 1, biset }],
        )
        .unwrap();
        q.free_ei_cover().unwrap().cat
    }

    /// Same shape but the hom-set is a single fixed point.
    fn singleton_pair_category() -> FiniteCategory {
        let triv = FiniteGroup::trivial(1);
        let c2 = FiniteGroup::cyclic(2);
        let biset = Biset::new(
            c2.clone(),
            triv.clone(),
            1,
            vec![Perm::identity(1), Perm::identity(1)],
            vec![Perm::identity(1)],
        )
        .unwrap();
        let q = EiQuiver::new(
            vec!["x".into(), "y".into()],
            vec![triv, c2],
            vec![EiArrow { src: 0, tgt: 1, biset }],
        )
        .unwrap();
        q.free_ei_cover().unwrap().cat
    }

    fn trivial_rep_at_source(cat: &FiniteCategory, f: &Fq) -> CatRep {
        let ax = cat.aut_group(0);
        let (sub, _, _) = cat.full_subcategory(&[0]).unwrap();
        assert_eq!(ax.order(), 1);
        CatRep::new(f.clone(), sub, vec![1], vec![Mat::identity(1)]).unwrap()
    }

    #[test]
    fn generic_induction_from_source_of_swap_pair() {
        let cat = swap_pair_category();
        let f = Fq::prime(3).unwrap();
        let rep = trivial_rep_at_source(&cat, &f);
        let ind = induce_rep(&cat, &[0], &rep).unwrap();
        assert_eq!(ind.dims(), &[1, 2]);
        // Restriction back to the source object is the original.
        let (_, back) = ind.restrict_to_objects(&[0]).unwrap();
        assert_eq!(back.dims(), &[1]);
    }

    #[test]
    fn fastpath_matches_generic_on_swap_pair() {
        let cat = swap_pair_category();
        let f = Fq::prime(3).unwrap();
        let ax = cat.aut_group(0);
        let v = FqModule::trivial(&f, &ax.group);
        let fast = induce_two_object_fastpath(&cat, &v).unwrap();
        assert_eq!(fast.dims(), &[1, 2]);

        let rep = trivial_rep_at_source(&cat, &f);
        let generic = induce_rep(&cat, &[0], &rep).unwrap();
        assert!(catrep_is_isomorphic(&generic, &fast, &mut rng()).unwrap());
    }

    /// The subcategory of a two-object category that keeps both objects and
    /// the cross morphisms but drops every non-identity automorphism.
    /// Returns the subcategory together with its embedding data.
    fn identities_and_crosses(parent: &FiniteCategory) -> (FiniteCategory, Vec<usize>, Vec<usize>) {
        let crosses = parent.hom(0, 1).to_vec();
        let mut mors = vec![
            MorInfo { src: 0, tgt: 0, name: "id_x".into() },
            MorInfo { src: 1, tgt: 1, name: "id_y".into() },
        ];
        for (i, _) in crosses.iter().enumerate() {
            mors.push(MorInfo { src: 0, tgt: 1, name: format!("c{i}") });
        }
        let n = mors.len();
        let compose = move |f: usize, g: usize| -> Option<usize> {
            match (f, g) {
                (0, 0) => Some(0),
                (1, 1) => Some(1),
                (f, 0) if f >= 2 && f < n => Some(f),
                (1, g) if g >= 2 && g < n => Some(g),
                _ => None,
            }
        };
        let sub = FiniteCategory::new(
            vec!["x".into(), "y".into()],
            mors,
            vec![0, 1],
            &compose,
        )
        .unwrap();
        let mut mor_map = vec![parent.identity(0), parent.identity(1)];
        mor_map.extend(crosses);
        (sub, vec![0, 1], mor_map)
    }

    #[test]
    fn non_full_induction_collapses_swapped_crosses() {
        // Dropping the order-2 automorphism of y leaves the two cross
        // morphisms independent in the subcategory; a module sending them to
        // 1 and 3 over F5 then has no consistent extension at y, so the
        // balancing relations kill that component entirely.
        let cat = swap_pair_category();
        let f = Fq::prime(5).unwrap();
        let (sub, objects, mor_map) = identities_and_crosses(&cat);
        let rep = CatRep::new(
            f,
            sub,
            vec![1, 1],
            vec![
                Mat::identity(1),
                Mat::identity(1),
                Mat::from_rows(vec![vec![1]]).unwrap(),
                Mat::from_rows(vec![vec![3]]).unwrap(),
            ],
        )
        .unwrap();
        let ind = induce_rep_along(&cat, &objects, &mor_map, &rep).unwrap();
        assert_eq!(ind.dims(), &[1, 0]);
    }

    #[test]
    fn non_full_induction_on_singleton_pair_restricts_to_input() {
        // With a single fixed cross morphism, dropping the automorphism of y
        // changes nothing at the chosen objects: the induced module still has
        // dimension vector (1, 1) over F2 and restricts back to the input.
        let cat = singleton_pair_category();
        let f = Fq::prime(2).unwrap();
        let (sub, objects, mor_map) = identities_and_crosses(&cat);
        let rep = CatRep::new(
            f,
            sub.clone(),
            vec![1, 1],
            vec![Mat::identity(1), Mat::identity(1), Mat::identity(1)],
        )
        .unwrap();
        let ind = induce_rep_along(&cat, &objects, &mor_map, &rep).unwrap();
        assert_eq!(ind.dims(), &[1, 1]);
        let back = ind.restrict_along(&sub, &objects, &mor_map).unwrap();
        assert!(catrep_is_isomorphic(&back, &rep, &mut rng()).unwrap());
    }

    #[test]
    fn non_full_induction_rejects_broken_embedding() {
        let cat = swap_pair_category();
        let f = Fq::prime(5).unwrap();
        let (sub, objects, mut mor_map) = identities_and_crosses(&cat);
        let rep = CatRep::new(
            f,
            sub,
            vec![1, 1],
            vec![
                Mat::identity(1),
                Mat::identity(1),
                Mat::identity(1),
                Mat::identity(1),
            ],
        )
        .unwrap();
        // Send id_y to the non-identity automorphism of y instead.
        let g = cat
            .hom(1, 1)
            .iter()
            .copied()
            .find(|&m| m != cat.identity(1))
            .unwrap();
        mor_map[1] = g;
        assert!(matches!(
            induce_rep_along(&cat, &objects, &mor_map, &rep),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fastpath_on_singleton_hom_gives_dims_one_one() {
        let cat = singleton_pair_category();
        let f = Fq::prime(2).unwrap();
        let ax = cat.aut_group(0);
        let v = FqModule::trivial(&f, &ax.group);
        let fast = induce_two_object_fastpath(&cat, &v).unwrap();
        assert_eq!(fast.dims(), &[1, 1]);
        let rep = trivial_rep_at_source(&cat, &f);
        let generic = induce_rep(&cat, &[0], &rep).unwrap();
        assert!(catrep_is_isomorphic(&generic, &fast, &mut rng()).unwrap());
    }

    #[test]
    fn witness_count_on_singleton_requires_fixed_vector() {
        // W = regular kC2 over F3; the single hom point is fixed by the C2,
        // so phi must satisfy W(swap)·phi = phi: 3 of the 9 candidates.
        let cat = singleton_pair_category();
        let f = Fq::prime(3).unwrap();
        let ax = cat.aut_group(0);
        let ay = cat.aut_group(1);
        let v = FqModule::trivial(&f, &ax.group);
        let w = FqModule::regular(&f, &ay.group);
        let mut good = 0;
        for a in 0..3u64 {
            for b in 0..3u64 {
                let phi = Mat::from_rows(vec![vec![a], vec![b]]).unwrap();
                if rep_from_witness(&cat, &v, &w, &[phi]).is_ok() {
                    good += 1;
                }
            }
        }
        assert_eq!(good, 3);
    }

    #[test]
    fn witness_on_swap_pair_is_unconstrained() {
        // C2 permutes the two hom points freely, so every phi extends.
        let cat = swap_pair_category();
        let f = Fq::prime(3).unwrap();
        let ax = cat.aut_group(0);
        let ay = cat.aut_group(1);
        let v = FqModule::trivial(&f, &ax.group);
        let w = FqModule::regular(&f, &ay.group);
        let mut good = 0;
        for a in 0..3u64 {
            for b in 0..3u64 {
                let phi = Mat::from_rows(vec![vec![a], vec![b]]).unwrap();
                if rep_from_witness(&cat, &v, &w, &[phi]).is_ok() {
                    good += 1;
                }
            }
        }
        assert_eq!(good, 9);
    }

    #[test]
    fn hom_space_of_induced_with_itself() {
        let cat = swap_pair_category();
        let f = Fq::prime(3).unwrap();
        let rep = trivial_rep_at_source(&cat, &f);
        let ind = induce_rep(&cat, &[0], &rep).unwrap();
        let end = catrep_hom_dim(&ind, &ind).unwrap();
        // By adjunction End(Ind k) = Hom(k, Res Ind k) = Hom(k, k) at x.
        assert_eq!(end, 1);
        assert!(catrep_is_isomorphic(&ind, &ind, &mut rng()).unwrap());
    }

    #[test]
    fn restriction_of_induction_is_the_input() {
        let cat = swap_pair_category();
        let f = Fq::prime(5).unwrap();
        let rep = trivial_rep_at_source(&cat, &f);
        let ind = induce_rep(&cat, &[0], &rep).unwrap();
        let (_, back) = ind.restrict_to_objects(&[0]).unwrap();
        assert!(catrep_is_isomorphic(&rep, &back, &mut rng()).unwrap());
    }
}
