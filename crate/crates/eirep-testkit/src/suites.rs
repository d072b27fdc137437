//! Cross-checking property suites. Each suite runs `cases` independent
//! randomized checks from a seeded generator and reports every violation;
//! a violation message starts with the case index so a failure can be
//! replayed by reseeding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eirep_core::catalg::{catrep_is_isomorphic, induce_rep, induce_two_object_fastpath};
use eirep_core::category::FiniteCategory;
use eirep_core::decider::{decide, decide_symmetrized, DecideOptions, Outcome};
use eirep_core::eiquiver::{EiArrow, EiQuiver};
use eirep_core::field::Fq;
use eirep_core::group::FiniteGroup;
use eirep_core::modrep::{self, FqModule};
use eirep_core::ordinary::{ordinary_quiver, RepChoice};
use eirep_core::perm::Perm;
use eirep_core::Error;

use crate::gen::{
    concentrated_rep, random_biset, random_category, random_group, random_invertible_mat,
    random_module, random_object_subset, random_prime_field, random_subgroup,
    random_transitive_biset, GenLimits,
};

/// Outcome of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    /// Checks actually executed.
    pub cases: usize,
    /// Cases skipped for declared resource reasons (still counted in `cases`).
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &'static str) -> SuiteReport {
        SuiteReport { suite, cases: 0, skipped: 0, failures: Vec::new() }
    }

    /// Panics unless the suite ran at least `min_cases` checks and found no
    /// violation.
    pub fn assert_clean(&self, min_cases: usize) {
        assert!(
            self.cases >= min_cases,
            "suite {} ran only {} of the required {} cases",
            self.suite,
            self.cases,
            min_cases
        );
        assert!(
            self.failures.is_empty(),
            "suite {} found {} violation(s); first: {}",
            self.suite,
            self.failures.len(),
            self.failures[0]
        );
    }
}

fn random_char<R: Rng>(rng: &mut R) -> u64 {
    [0u64, 2, 3, 5, 7][rng.random_range(0..5)]
}

/// Orbit order identity: for any biset point, the two-sided orbit has size
/// |H : H0| · |G : G1| = |G : G0| · |H : H1|, the stabilizer chain is normal
/// one step up, and rho is an isomorphism G1/G0 -> H1/H0.
pub fn orbit_order_identity(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("orbit-order-identity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits::default();
    for case in 0..cases {
        r.cases += 1;
        let h = random_group(&mut rng, &limits);
        let g = random_group(&mut rng, &limits);
        let b = random_biset(&mut rng, &h, &g, limits.max_carrier);
        let alpha = rng.random_range(0..b.size());
        let chain = match b.stabilizer_chain(alpha) {
            Ok(c) => c,
            Err(e) => {
                r.failures.push(format!("case {case}: stabilizer chain failed: {e}"));
                continue;
            }
        };
        let orbit = b
            .two_sided_orbits()
            .into_iter()
            .find(|o| o.contains(&alpha))
            .expect("alpha lies in some orbit");
        let via_h = (h.order() / chain.h0.order()) * (g.order() / chain.g1.order());
        let via_g = (g.order() / chain.g0.order()) * (h.order() / chain.h1.order());
        if orbit.len() != via_h || orbit.len() != via_g {
            r.failures.push(format!(
                "case {case}: orbit of size {} but |H:H0||G:G1| = {via_h}, |G:G0||H:H1| = {via_g}",
                orbit.len()
            ));
            continue;
        }
        if chain.g1.order() * chain.h0.order() != chain.h1.order() * chain.g0.order() {
            r.failures.push(format!(
                "case {case}: |G1|/|G0| != |H1|/|H0| ({}/{} vs {}/{})",
                chain.g1.order(),
                chain.g0.order(),
                chain.h1.order(),
                chain.h0.order()
            ));
            continue;
        }
        for (outer, inner, side) in
            [(&chain.g1, &chain.g0, "G"), (&chain.h1, &chain.h0, "H")]
        {
            match outer.sub_in(inner) {
                Ok(s) if s.is_normal() => {}
                Ok(_) => r.failures.push(format!(
                    "case {case}: {side}0 is not normal in {side}1"
                )),
                Err(e) => r.failures.push(format!(
                    "case {case}: {side}0 does not embed in {side}1: {e}"
                )),
            }
        }
        let qg = &chain.quot_g.group;
        let qh = &chain.quot_h.group;
        if qg.order() != qh.order() {
            r.failures.push(format!("case {case}: quotient orders differ"));
            continue;
        }
        let mut seen = vec![false; qh.order()];
        let mut ok = true;
        for a in 0..qg.order() {
            let img = chain.rho_of(a);
            if img >= qh.order() || seen[img] {
                ok = false;
                break;
            }
            seen[img] = true;
        }
        if ok {
            'mult: for a in 0..qg.order() {
                for bb in 0..qg.order() {
                    if chain.rho_of(qg.mul(a, bb)) != qh.mul(chain.rho_of(a), chain.rho_of(bb)) {
                        ok = false;
                        break 'mult;
                    }
                }
            }
        }
        if !ok {
            r.failures.push(format!("case {case}: rho is not an isomorphism of the quotients"));
        }
    }
    r
}

/// Frobenius reciprocity as a dimension identity:
/// dim Hom_G(V↑, W) = dim Hom_A(V, W↓) over any field.
pub fn frobenius_reciprocity(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("frobenius-reciprocity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits::default();
    for case in 0..cases {
        r.cases += 1;
        let g = random_group(&mut rng, &limits);
        let a = random_subgroup(&mut rng, &g);
        let f = random_prime_field(&mut rng);
        let v = random_module(&mut rng, &f, &a.as_group(), 3);
        let w = random_module(&mut rng, &f, &g, 5);
        let ind = match modrep::induce(&g, &a, &v) {
            Ok(m) => m,
            Err(e) => {
                r.failures.push(format!("case {case}: induction failed: {e}"));
                continue;
            }
        };
        let lhs = modrep::hom_dim(&ind, &w);
        let rhs = modrep::hom_dim(&v, &w.restrict(&a));
        if lhs != rhs {
            r.failures.push(format!(
                "case {case}: dim Hom_G(V↑, W) = {lhs} but dim Hom_A(V, W↓) = {rhs} \
                 (|G| = {}, |A| = {}, dim V = {}, dim W = {}, {:?})",
                g.order(),
                a.order(),
                v.dim(),
                w.dim(),
                f
            ));
        }
    }
    r
}

/// dim End(k[G/A]) = |A\G/A|, both for the permutation module and for the
/// trivial module induced up.
pub fn permutation_endomorphisms(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("permutation-endomorphisms");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits::default();
    for case in 0..cases {
        r.cases += 1;
        let g = random_group(&mut rng, &limits);
        let a = random_subgroup(&mut rng, &g);
        let f = random_prime_field(&mut rng);
        let expected = g.double_coset_count(&a, &a);
        let perm = FqModule::permutation_module(&f, &g, &a);
        let d1 = modrep::hom_dim(&perm, &perm);
        let ind =
            modrep::induce(&g, &a, &FqModule::trivial(&f, &a.as_group())).expect("trivial induces");
        let d2 = modrep::hom_dim(&ind, &ind);
        if d1 != expected || d2 != expected {
            r.failures.push(format!(
                "case {case}: |A\\G/A| = {expected} but End dims are {d1} (permutation) and \
                 {d2} (induced), |G| = {}, |A| = {}, {:?}",
                g.order(),
                a.order(),
                f
            ));
        }
    }
    r
}

/// The multiset of composition factors — as (dimension, trace vector) pairs —
/// is invariant under conjugating the module by an invertible matrix, and
/// independent of the randomness inside the splitting search.
pub fn composition_factor_invariance(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("composition-factor-invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits::default();
    for case in 0..cases {
        r.cases += 1;
        let g = random_group(&mut rng, &limits);
        let f = random_prime_field(&mut rng);
        let m = random_module(&mut rng, &f, &g, 8);
        let p = random_invertible_mat(&mut rng, &f, m.dim());
        let mc = m.conjugate(&p).expect("conjugation by invertible matrix");
        let factors = |m: &FqModule, rng: &mut ChaCha8Rng| -> Result<Vec<(usize, Vec<u64>)>, Error> {
            let mut v: Vec<(usize, Vec<u64>)> = modrep::chop(m, rng)?
                .iter()
                .map(|s| (s.dim(), s.trace_vector()))
                .collect();
            v.sort();
            Ok(v)
        };
        match (factors(&m, &mut rng), factors(&mc, &mut rng)) {
            (Ok(fa), Ok(fb)) => {
                if fa != fb {
                    r.failures.push(format!(
                        "case {case}: factor multisets differ after conjugation: {:?} vs {:?} \
                         (|G| = {}, dim = {}, {:?})",
                        fa.iter().map(|x| x.0).collect::<Vec<_>>(),
                        fb.iter().map(|x| x.0).collect::<Vec<_>>(),
                        g.order(),
                        m.dim(),
                        f
                    ));
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                r.failures.push(format!("case {case}: chop failed: {e}"));
            }
        }
    }
    r
}

/// Restriction after induction along a full subcategory is the identity (up
/// to isomorphism) on representations concentrated at one object.
pub fn induce_restrict_roundtrip(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("induce-restrict-roundtrip");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits {
        min_objects: 2,
        max_objects: 3,
        max_carrier: 10,
        max_cover_morphisms: 200,
        ..GenLimits::default()
    };
    for case in 0..cases {
        r.cases += 1;
        let c = random_category(&mut rng, &limits);
        let n = c.n_objects();
        let k = rng.random_range(1..n);
        let objs = random_object_subset(&mut rng, n, k);
        let (d, _, _) = c.full_subcategory(&objs).expect("object subset is valid");
        let pos = rng.random_range(0..k);
        let aut = d.aut_group(pos);
        let l = modrep::splitting_prime(&[&aut.group], &[]);
        let f = Fq::prime(l).unwrap();
        let v = random_module(&mut rng, &f, &aut.group, 3);
        let rep = concentrated_rep(&d, pos, &v);
        let ind = match induce_rep(&c, &objs, &rep) {
            Ok(i) => i,
            Err(e) => {
                r.failures.push(format!("case {case}: induction failed: {e}"));
                continue;
            }
        };
        let back = match ind.restrict_to_objects(&objs) {
            Ok((_, b)) => b,
            Err(e) => {
                r.failures.push(format!("case {case}: restriction failed: {e}"));
                continue;
            }
        };
        match catrep_is_isomorphic(&rep, &back, &mut rng) {
            Ok(true) => {}
            Ok(false) => r.failures.push(format!(
                "case {case}: restriction of the induced representation is not isomorphic to \
                 the original (dims {:?} vs {:?}, {} objects, subset {:?})",
                rep.dims(),
                back.dims(),
                n,
                objs
            )),
            Err(Error::Resource(_)) => r.skipped += 1,
            Err(e) => r.failures.push(format!("case {case}: isomorphism test failed: {e}")),
        }
    }
    r
}

/// The ordinary quiver does not depend on which representative of a
/// two-sided orbit is chosen nor on the splitting randomness.
pub fn quiver_representative_independence(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("quiver-representative-independence");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits {
        max_objects: 2,
        max_carrier: 10,
        max_cover_morphisms: 120,
        ..GenLimits::default()
    };
    for case in 0..cases {
        r.cases += 1;
        let c = random_category(&mut rng, &limits);
        let offset = rng.random_range(1..6);
        let s1 = rng.random();
        let s2 = rng.random();
        let q1 = ordinary_quiver(&c, s1, RepChoice::Least);
        let q2 = ordinary_quiver(&c, s2, RepChoice::Offset(offset));
        match (q1, q2) {
            (Ok(q1), Ok(q2)) => {
                let v1: Vec<(usize, usize, usize)> =
                    q1.vertices.iter().map(|v| (v.object, v.simple_index, v.dim)).collect();
                let v2: Vec<(usize, usize, usize)> =
                    q2.vertices.iter().map(|v| (v.object, v.simple_index, v.dim)).collect();
                let mut a1 = q1.arrows.clone();
                let mut a2 = q2.arrows.clone();
                a1.sort_unstable();
                a2.sort_unstable();
                if q1.field != q2.field || v1 != v2 || a1 != a2 {
                    r.failures.push(format!(
                        "case {case}: quivers differ between representative choices \
                         (offset {offset}): vertices {v1:?} vs {v2:?}, arrows {a1:?} vs {a2:?}"
                    ));
                }
            }
            (Err(Error::Resource(_)), _) | (_, Err(Error::Resource(_))) => r.skipped += 1,
            (Err(e), _) | (_, Err(e)) => {
                r.failures.push(format!("case {case}: ordinary quiver failed: {e}"));
            }
        }
    }
    r
}

/// `decide` and `decide_symmetrized` never contradict each other, and the
/// symmetrized call never reports an internal inconsistency.
pub fn decider_symmetrization(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("decider-symmetrization");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits::default();
    for case in 0..cases {
        r.cases += 1;
        let c = random_category(&mut rng, &limits);
        let p = random_char(&mut rng);
        let opts = DecideOptions { seed: case as u64, extended: false };
        let v1 = match decide(&c, p, &opts) {
            Ok(v) => v,
            Err(e) => {
                r.failures.push(format!("case {case}: decide failed at p = {p}: {e}"));
                continue;
            }
        };
        match decide_symmetrized(&c, p, &opts) {
            Ok(v2) => {
                if v1.outcome != Outcome::Unknown
                    && v2.outcome != Outcome::Unknown
                    && v1.outcome != v2.outcome
                {
                    r.failures.push(format!(
                        "case {case}: decide says {} but decide_symmetrized says {} at p = {p}",
                        v1.outcome, v2.outcome
                    ));
                }
                if v2.outcome == Outcome::Infinite
                    && !v2.trace.iter().any(|e| {
                        e.status == eirep_core::decider::RuleStatus::Fail
                    })
                {
                    r.failures.push(format!(
                        "case {case}: infinite verdict carries no failing trace entry"
                    ));
                }
            }
            Err(e) => r.failures.push(format!(
                "case {case}: decide_symmetrized failed at p = {p}: {e}"
            )),
        }
    }
    r
}

/// Corpus-wide coherence: a finite parent admits no infinite full
/// subcategory, no infinite orbit collapse, and no contradiction with the
/// opposite category.
pub fn corpus_no_contradiction(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("corpus-no-contradiction");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits::default();
    for case in 0..cases {
        r.cases += 1;
        let c = random_category(&mut rng, &limits);
        let p = random_char(&mut rng);
        let opts = DecideOptions { seed: case as u64, extended: false };
        let parent = match decide(&c, p, &opts) {
            Ok(v) => v,
            Err(e) => {
                r.failures.push(format!("case {case}: decide failed at p = {p}: {e}"));
                continue;
            }
        };
        let op = match decide(&c.opposite(), p, &opts) {
            Ok(v) => v,
            Err(e) => {
                r.failures.push(format!("case {case}: decide on C^op failed at p = {p}: {e}"));
                continue;
            }
        };
        if matches!(
            (parent.outcome, op.outcome),
            (Outcome::Finite, Outcome::Infinite) | (Outcome::Infinite, Outcome::Finite)
        ) {
            r.failures.push(format!(
                "case {case}: C is {} but C^op is {} at p = {p}",
                parent.outcome, op.outcome
            ));
            continue;
        }
        if parent.outcome != Outcome::Finite {
            continue;
        }
        let n = c.n_objects();
        for x in 0..n {
            for y in (x + 1)..n {
                let (sub, _, _) = c.full_subcategory(&[x, y]).expect("pair subset");
                match decide(&sub, p, &opts) {
                    Ok(v) if v.outcome == Outcome::Infinite => r.failures.push(format!(
                        "case {case}: parent is finite but the full subcategory on \
                         objects {x}, {y} is infinite at p = {p}"
                    )),
                    Ok(_) => {}
                    Err(e) => r.failures.push(format!(
                        "case {case}: decide on a pair subcategory failed: {e}"
                    )),
                }
            }
        }
        if let Ok(qc) = c.quotient_orbit_collapse() {
            match decide(&qc, p, &opts) {
                Ok(v) if v.outcome == Outcome::Infinite => r.failures.push(format!(
                    "case {case}: parent is finite but its orbit collapse is infinite at p = {p}"
                )),
                Ok(_) => {}
                Err(e) => r.failures.push(format!(
                    "case {case}: decide on the orbit collapse failed: {e}"
                )),
            }
        }
    }
    r
}

/// The two-object induction fastpath agrees with generic tensor induction
/// whenever its transitivity precondition holds.
pub fn fastpath_matches_generic(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new("fastpath-matches-generic");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = GenLimits::default();
    for case in 0..cases {
        r.cases += 1;
        let c = left_transitive_pair(&mut rng, &limits);
        let ax = c.aut_group(0);
        let ay = c.aut_group(1);
        let f = if rng.random_bool(0.75) {
            Fq::prime(modrep::splitting_prime(&[&ax.group, &ay.group], &[])).unwrap()
        } else {
            random_prime_field(&mut rng)
        };
        let v = random_module(&mut rng, &f, &ax.group, 3);
        let fast = match induce_two_object_fastpath(&c, &v) {
            Ok(m) => m,
            Err(e) => {
                r.failures.push(format!("case {case}: fastpath failed: {e}"));
                continue;
            }
        };
        let (d, _, _) = c.full_subcategory(&[0]).expect("source object");
        let rep = concentrated_rep(&d, 0, &v);
        let generic = match induce_rep(&c, &[0], &rep) {
            Ok(m) => m,
            Err(e) => {
                r.failures.push(format!("case {case}: generic induction failed: {e}"));
                continue;
            }
        };
        if fast.dims() != generic.dims() {
            r.failures.push(format!(
                "case {case}: dimension vectors differ: fastpath {:?} vs generic {:?}",
                fast.dims(),
                generic.dims()
            ));
            continue;
        }
        match catrep_is_isomorphic(&generic, &fast, &mut rng) {
            Ok(true) => {}
            Ok(false) => r.failures.push(format!(
                "case {case}: fastpath and generic induction are not isomorphic \
                 (dims {:?}, |Aut(x)| = {}, |Aut(y)| = {}, {:?})",
                fast.dims(),
                ax.group.order(),
                ay.group.order(),
                f
            )),
            Err(Error::Resource(_)) => r.skipped += 1,
            Err(e) => r.failures.push(format!("case {case}: isomorphism test failed: {e}")),
        }
    }
    r
}

/// A two-object category whose single arrow biset is left transitive,
/// within bounded size.
fn left_transitive_pair<R: Rng>(rng: &mut R, limits: &GenLimits) -> FiniteCategory {
    for _ in 0..80 {
        let h = random_group(rng, limits);
        let g = random_group(rng, limits);
        let Some(b) = random_transitive_biset(rng, &h, &g, 12) else { continue };
        if !b.left_transitive() {
            continue;
        }
        let q = EiQuiver::new(
            vec!["x".into(), "y".into()],
            vec![g.clone(), h.clone()],
            vec![EiArrow { src: 0, tgt: 1, biset: b }],
        )
        .expect("two-object quiver");
        if let Ok(Some(cover)) = q.free_ei_cover_bounded(200) {
            return cover.cat;
        }
    }
    // Fallback: H acting regularly on itself with a trivial right action is
    // always left transitive and small.
    let h = FiniteGroup::cyclic(3);
    let g = FiniteGroup::trivial(1);
    let left: Vec<Perm> = (0..3)
        .map(|i| Perm::from_images((0..3).map(|j| h.mul(i, j) as u32).collect()).unwrap())
        .collect();
    let b =
        eirep_core::biset::Biset::new(h.clone(), g.clone(), 3, left, vec![Perm::identity(3)])
            .unwrap();
    let q = EiQuiver::new(
        vec!["x".into(), "y".into()],
        vec![g, h],
        vec![EiArrow { src: 0, tgt: 1, biset: b }],
    )
    .unwrap();
    q.free_ei_cover().unwrap().cat
}
