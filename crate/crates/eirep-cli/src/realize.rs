//! Turn documents into core objects: categories from either presentation,
//! subcategory embeddings, and modules over prime fields.

use std::collections::{BTreeMap, HashMap};

use eirep_core::category::MorInfo;
use eirep_core::eiquiver::EiArrow;
use eirep_core::{Biset, CatRep, EiQuiver, Error, FiniteCategory, FiniteGroup, Fq, Mat, Perm};

use crate::doc::{
    CategoryBody, CategoryDoc, CliError, CliResult, ModuleDoc, SubcatDoc,
};

/// Cap on the number of morphisms a free cover may reach before the tool
/// refuses. A dense composition table of this size is ~1.6 GB, well past
/// anything the decision procedure can digest anyway.
pub const MAX_COVER_MORPHISMS: usize = 20_000;

fn validation(msg: String) -> CliError {
    CliError::Core(Error::Validation(msg))
}

fn index_by_name<'a, I>(names: I, what: &str) -> CliResult<HashMap<&'a str, usize>>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut map = HashMap::new();
    for (i, n) in names.into_iter().enumerate() {
        if map.insert(n, i).is_some() {
            return Err(validation(format!("duplicate {what} name \"{n}\"")));
        }
    }
    Ok(map)
}

fn perm_from_doc(images: &[usize], degree: usize, what: &str) -> CliResult<Perm> {
    if images.len() != degree {
        return Err(validation(format!(
            "{what}: expected an image array of length {degree}, found {}",
            images.len()
        )));
    }
    let mut imgs = Vec::with_capacity(images.len());
    for &i in images {
        imgs.push(
            u32::try_from(i).map_err(|_| validation(format!("{what}: image {i} out of range")))?,
        );
    }
    Perm::from_images(imgs).map_err(|e| validation(format!("{what}: {e}")))
}

/// Build the category a document describes. EI-quiver documents realize to
/// the free EI category on their generators; explicit documents to exactly
/// the tabulated category. Both run the full category axioms.
pub fn category_from_doc(doc: &CategoryDoc) -> CliResult<FiniteCategory> {
    match &doc.body {
        CategoryBody::EiQuiver { objects, arrows } => {
            let idx = index_by_name(objects.iter().map(|o| o.name.as_str()), "object")?;
            let mut groups = Vec::with_capacity(objects.len());
            for o in objects {
                if o.degree == 0 {
                    return Err(validation(format!(
                        "object \"{}\": permutation degree must be at least 1",
                        o.name
                    )));
                }
                let mut gens = Vec::with_capacity(o.generators.len());
                for (i, g) in o.generators.iter().enumerate() {
                    gens.push(perm_from_doc(
                        g,
                        o.degree,
                        &format!("object \"{}\" generator {i}", o.name),
                    )?);
                }
                let group = FiniteGroup::from_generators(o.degree, gens)
                    .map_err(|e| validation(format!("object \"{}\": {e}", o.name)))?;
                groups.push(group);
            }
            let mut ei_arrows = Vec::with_capacity(arrows.len());
            for (ai, a) in arrows.iter().enumerate() {
                let &src = idx
                    .get(a.src.as_str())
                    .ok_or_else(|| validation(format!("arrow {ai}: unknown object \"{}\"", a.src)))?;
                let &tgt = idx
                    .get(a.tgt.as_str())
                    .ok_or_else(|| validation(format!("arrow {ai}: unknown object \"{}\"", a.tgt)))?;
                let left: Vec<Perm> = a
                    .left
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        perm_from_doc(p, a.carrier, &format!("arrow {ai} left action {i}"))
                    })
                    .collect::<CliResult<_>>()?;
                let right: Vec<Perm> = a
                    .right
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        perm_from_doc(p, a.carrier, &format!("arrow {ai} right action {i}"))
                    })
                    .collect::<CliResult<_>>()?;
                let biset = Biset::from_gen_actions(
                    groups[tgt].clone(),
                    groups[src].clone(),
                    a.carrier,
                    &left,
                    &right,
                )
                .map_err(|e| validation(format!("arrow {ai} ({} -> {}): {e}", a.src, a.tgt)))?;
                ei_arrows.push(EiArrow { src, tgt, biset });
            }
            let names = objects.iter().map(|o| o.name.clone()).collect();
            let quiver = EiQuiver::new(names, groups, ei_arrows).map_err(CliError::Core)?;
            match quiver.free_ei_cover_bounded(MAX_COVER_MORPHISMS)? {
                Some(cover) => Ok(cover.cat),
                None => Err(CliError::Core(Error::Resource(format!(
                    "free category exceeds {MAX_COVER_MORPHISMS} morphisms"
                )))),
            }
        }
        CategoryBody::Explicit { objects, morphisms, identities, composition } => {
            let obj_idx = index_by_name(objects.iter().map(|s| s.as_str()), "object")?;
            let mor_idx = index_by_name(morphisms.iter().map(|m| m.id.as_str()), "morphism")?;
            let mut mors = Vec::with_capacity(morphisms.len());
            for m in morphisms {
                let &src = obj_idx.get(m.src.as_str()).ok_or_else(|| {
                    validation(format!("morphism \"{}\": unknown object \"{}\"", m.id, m.src))
                })?;
                let &tgt = obj_idx.get(m.tgt.as_str()).ok_or_else(|| {
                    validation(format!("morphism \"{}\": unknown object \"{}\"", m.id, m.tgt))
                })?;
                mors.push(MorInfo { src, tgt, name: m.id.clone() });
            }
            let mut ids = vec![usize::MAX; objects.len()];
            for (obj, mor) in identities {
                let &x = obj_idx
                    .get(obj.as_str())
                    .ok_or_else(|| validation(format!("identities: unknown object \"{obj}\"")))?;
                ids[x] = *mor_idx
                    .get(mor.as_str())
                    .ok_or_else(|| validation(format!("identities: unknown morphism \"{mor}\"")))?;
            }
            if let Some(x) = ids.iter().position(|&i| i == usize::MAX) {
                return Err(validation(format!(
                    "identities: no identity given for object \"{}\"",
                    objects[x]
                )));
            }

            // Composition triples are [f, g, h] with h = g∘f, i.e. f is
            // applied first. The core table is indexed the other way round:
            // compose(a, b) = a∘b.
            let mut table: HashMap<(usize, usize), usize> = HashMap::new();
            let mut put = |pair: (usize, usize), h: usize| -> CliResult<()> {
                match table.insert(pair, h) {
                    Some(old) if old != h => Err(validation(format!(
                        "conflicting composites for the pair ({}, {})",
                        morphisms[pair.1].id, morphisms[pair.0].id
                    ))),
                    _ => Ok(()),
                }
            };
            for m in 0..mors.len() {
                put((ids[mors[m].tgt], m), m)?;
                put((m, ids[mors[m].src]), m)?;
            }
            for t in composition {
                let resolve = |name: &str| {
                    mor_idx.get(name).copied().ok_or_else(|| {
                        validation(format!("composition: unknown morphism \"{name}\""))
                    })
                };
                let f = resolve(&t[0])?;
                let g = resolve(&t[1])?;
                let h = resolve(&t[2])?;
                if mors[f].tgt != mors[g].src {
                    return Err(validation(format!(
                        "composition: ({}, {}) is not a composable pair",
                        t[0], t[1]
                    )));
                }
                put((g, f), h)?;
            }
            let compose = |a: usize, b: usize| table.get(&(a, b)).copied();
            FiniteCategory::new(objects.clone(), mors, ids, &compose).map_err(CliError::Core)
        }
    }
}

/// A subcategory inclusion resolved against its parent: the subcategory
/// itself plus the parent index of each of its objects and morphisms.
pub struct SubEmbedding {
    pub sub: FiniteCategory,
    pub objects: Vec<usize>,
    pub mor_map: Vec<usize>,
}

/// Resolve a subcategory document against a realized parent category.
/// Without an explicit morphism list this is the full subcategory; with one
/// it may drop morphisms (for instance automorphisms), as long as the kept
/// set contains the identities and is closed under composition.
pub fn subcategory_from_doc(parent: &FiniteCategory, doc: &SubcatDoc) -> CliResult<SubEmbedding> {
    let obj_idx = index_by_name(
        (0..parent.n_objects()).map(|x| parent.object_name(x)),
        "parent object",
    )?;
    let mut objects = Vec::with_capacity(doc.objects.len());
    for name in &doc.objects {
        let &x = obj_idx
            .get(name.as_str())
            .ok_or_else(|| validation(format!("subcategory: unknown object \"{name}\"")))?;
        if objects.contains(&x) {
            return Err(validation(format!("subcategory: object \"{name}\" listed twice")));
        }
        objects.push(x);
    }

    let Some(kept_names) = &doc.morphisms else {
        let (sub, objs, mor_map) = parent.full_subcategory(&objects)?;
        return Ok(SubEmbedding { sub, objects: objs, mor_map });
    };

    let mor_idx = index_by_name(
        (0..parent.n_morphisms()).map(|m| parent.mor_name(m)),
        "parent morphism",
    )?;
    let mut mor_map = Vec::with_capacity(kept_names.len());
    for name in kept_names {
        let &m = mor_idx
            .get(name.as_str())
            .ok_or_else(|| validation(format!("subcategory: unknown morphism \"{name}\"")))?;
        if mor_map.contains(&m) {
            return Err(validation(format!("subcategory: morphism \"{name}\" listed twice")));
        }
        mor_map.push(m);
    }

    let obj_pos: HashMap<usize, usize> =
        objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut mor_pos: HashMap<usize, usize> = HashMap::new();
    for (i, &m) in mor_map.iter().enumerate() {
        mor_pos.insert(m, i);
    }
    let mut mors = Vec::with_capacity(mor_map.len());
    for &m in &mor_map {
        let (Some(&src), Some(&tgt)) =
            (obj_pos.get(&parent.src(m)), obj_pos.get(&parent.tgt(m)))
        else {
            return Err(validation(format!(
                "subcategory: morphism \"{}\" has an endpoint outside the chosen objects",
                parent.mor_name(m)
            )));
        };
        mors.push(MorInfo { src, tgt, name: parent.mor_name(m).to_string() });
    }
    let mut ids = Vec::with_capacity(objects.len());
    for &x in &objects {
        let Some(&i) = mor_pos.get(&parent.identity(x)) else {
            return Err(validation(format!(
                "subcategory: the identity of \"{}\" must be kept",
                parent.object_name(x)
            )));
        };
        ids.push(i);
    }
    // Closure under composition, checked here so the error can name the
    // missing composite rather than merely the failing pair.
    for (i, &a) in mor_map.iter().enumerate() {
        for (j, &b) in mor_map.iter().enumerate() {
            if mors[i].src != mors[j].tgt {
                continue;
            }
            let h = parent.compose(a, b).expect("composable in the parent");
            if !mor_pos.contains_key(&h) {
                return Err(validation(format!(
                    "subcategory: not closed under composition, {} ∘ {} = {} is missing",
                    parent.mor_name(a),
                    parent.mor_name(b),
                    parent.mor_name(h)
                )));
            }
        }
    }
    let endpoints: Vec<(usize, usize)> = mors.iter().map(|m| (m.src, m.tgt)).collect();
    let compose = |a: usize, b: usize| -> Option<usize> {
        if endpoints[a].0 != endpoints[b].1 {
            return None;
        }
        let h = parent.compose(mor_map[a], mor_map[b]).expect("checked above");
        Some(mor_pos[&h])
    };
    let names = objects.iter().map(|&x| parent.object_name(x).to_string()).collect();
    let sub = FiniteCategory::new(names, mors, ids, &compose).map_err(CliError::Core)?;
    Ok(SubEmbedding { sub, objects, mor_map })
}

/// Build the module a document describes over the given (sub)category.
pub fn module_from_doc(cat: &FiniteCategory, doc: &ModuleDoc) -> CliResult<CatRep> {
    let field = Fq::prime(doc.characteristic)
        .map_err(|e| validation(format!("module characteristic: {e}")))?;
    let mut dims = Vec::with_capacity(cat.n_objects());
    for x in 0..cat.n_objects() {
        let name = cat.object_name(x);
        let Some(&d) = doc.dims.get(name) else {
            return Err(validation(format!("module: no dimension given for object \"{name}\"")));
        };
        dims.push(d);
    }
    for name in doc.dims.keys() {
        if !(0..cat.n_objects()).any(|x| cat.object_name(x) == name) {
            return Err(validation(format!("module: unknown object \"{name}\" in dims")));
        }
    }
    for name in doc.matrices.keys() {
        if !(0..cat.n_morphisms()).any(|m| cat.mor_name(m) == name) {
            return Err(validation(format!("module: unknown morphism \"{name}\" in matrices")));
        }
    }
    let mut mats = Vec::with_capacity(cat.n_morphisms());
    for m in 0..cat.n_morphisms() {
        let name = cat.mor_name(m);
        let rows = dims[cat.tgt(m)];
        let cols = dims[cat.src(m)];
        let mat = match doc.matrices.get(name) {
            Some(entries) => {
                if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
                    return Err(validation(format!(
                        "module: matrix of \"{name}\" must be {rows} x {cols}"
                    )));
                }
                if rows == 0 || cols == 0 {
                    Mat::zero(rows, cols)
                } else {
                    Mat::from_rows(entries.clone()).map_err(CliError::Core)?
                }
            }
            None if m == cat.identity(cat.src(m)) && rows == cols => Mat::identity(rows),
            None if rows == 0 || cols == 0 => Mat::zero(rows, cols),
            None => {
                return Err(validation(format!("module: missing matrix for \"{name}\"")));
            }
        };
        mats.push(mat);
    }
    CatRep::new(field, cat.clone(), dims, mats).map_err(CliError::Core)
}

/// Object dimensions of a representation keyed by object name, the form
/// documents use.
pub fn dims_by_name(rep: &CatRep) -> BTreeMap<String, usize> {
    (0..rep.cat().n_objects())
        .map(|x| (rep.cat().object_name(x).to_string(), rep.dim_at(x)))
        .collect()
}
