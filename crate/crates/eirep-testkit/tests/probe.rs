//! Generator coverage: the random corpus must exercise every verdict kind
//! and every allowed object count, otherwise the property suites silently
//! lose their teeth.

use eirep_core::decider::{decide, DecideOptions, Outcome};
use eirep_testkit::gen::{random_category, GenLimits};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn corpus_reaches_every_outcome_and_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let limits = GenLimits::default();
    let mut fin = 0usize;
    let mut inf = 0usize;
    let mut unk = 0usize;
    let mut obj_hist = [0usize; 4];
    for case in 0..300u64 {
        let c = random_category(&mut rng, &limits);
        obj_hist[c.n_objects().min(3)] += 1;
        let p = [0u64, 2, 3, 5, 7][rng.random_range(0..5)];
        let v = decide(&c, p, &DecideOptions { seed: case, extended: false }).unwrap();
        match v.outcome {
            Outcome::Finite => fin += 1,
            Outcome::Infinite => inf += 1,
            Outcome::Unknown => unk += 1,
        }
    }
    println!("outcomes: finite={fin} infinite={inf} unknown={unk}");
    println!("objects histogram (1,2,3): {:?}", &obj_hist[1..]);
    assert!(fin >= 30, "corpus produced too few finite verdicts: {fin}");
    assert!(inf >= 30, "corpus produced too few infinite verdicts: {inf}");
    assert!(unk >= 1, "corpus never produced an unknown verdict");
    assert!(obj_hist[1..].iter().all(|&c| c >= 20), "object counts skewed: {obj_hist:?}");
}
