//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{check_poset, check_setup, explicit_setup, words_setup, RandomPoset};
use psetup_core::completion::{AntichainCompletion, AntichainPoset, CompletionKind, CompletionReport, IffTheoremReport};
use psetup_core::setup::is_extent_system;
use psetup_core::structure::{is_pattern_structure, PatternStructure};
use psetup_core::{fixtures, Cover, Description, IndexSet, OmegaSymbol, PatternSetup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn sets(s: &PatternSetup, family: &[&[&str]]) -> Vec<IndexSet> {
    let mut v: Vec<IndexSet> = family.iter().map(|ids| s.object_set(ids).unwrap()).collect();
    v.sort();
    v
}

fn words(ws: &[&str]) -> Vec<Description> {
    ws.iter().map(|w| Description::word(w)).collect()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = fixtures::seq();
    let g24 = s.object_set(&["g2", "g4"]).unwrap();
    ensure(s.ext(&Description::word("bb")).unwrap() == g24, "ext(bb)")?;
    ensure(s.cov(&g24).unwrap() == Cover::Finite(words(&["b", "bb", "c"])), "cov({g2,g4})")?;
    ensure(s.cov_star(&g24).unwrap().members() == words(&["bb", "c"]).as_slice(), "cov*({g2,g4})")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("ext/cov/cov* on SEQ in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let s = fixtures::seq();
    let want = sets(
        &s,
        &[&[], &["g1"], &["g2"], &["g4"], &["g2", "g4"], &["g1", "g2", "g3"], &["g1", "g2", "g4"]],
    );
    ensure(s.definable_extents().unwrap().extents == want, "definable extents")?;
    let b = s.object_set(&["g1", "g2"]).unwrap();
    let approx = s.upper_approximations(&b).unwrap();
    ensure(approx == sets(&s, &[&["g1", "g2", "g3"], &["g1", "g2", "g4"]]), "upper approximations of {g1,g2}")?;
    let c = s.object_set(&["g3", "g4"]).unwrap();
    ensure(s.upper_approximations(&c).unwrap().is_empty(), "upper approximations of {g3,g4}")?;
    Ok("7 extents, 2 + 0 upper approximations".into())
}

fn criterion_3() -> Outcome {
    let ps = PatternStructure::new(fixtures::item()).map_err(|e| e.to_string())?;
    let lattice = ps.concept_lattice().map_err(|e| e.to_string())?;
    let got: Vec<(String, String)> = lattice
        .concepts
        .iter()
        .map(|c| (ps.setup().format_objects(&c.extent), c.intent.to_string()))
        .collect();
    let want = [("{g1}", "{a,b,c}"), ("{g1,g4}", "{b,c}"), ("{g1,g2,g3}", "{a}"), ("{g1,g2,g3,g4}", "{}")];
    ensure(got.len() == 4, format!("{} concepts", got.len()))?;
    ensure(got.iter().zip(want).all(|((e, i), (we, wi))| e == we && i == wi), format!("{got:?}"))?;
    Ok("4 concepts".into())
}

fn criterion_4() -> Outcome {
    let s = fixtures::seq_top();
    let iff = IffTheoremReport::compute(&s).map_err(|e| e.to_string())?;
    ensure(iff.multistructure.holds, "SEQ+TOP is a multistructure")?;
    ensure(iff.completion_structure.as_ref().is_some_and(|c| c.holds), "completion is a structure")?;
    let lattice = AntichainCompletion::new(&s).and_then(|c| c.concept_lattice()).map_err(|e| e.to_string())?;
    ensure(lattice.len() == 9, format!("{} concepts", lattice.len()))?;
    let g12 = s.object_set(&["g1", "g2"]).unwrap();
    ensure(lattice.find(&g12).is_some_and(|c| c.intent.to_string() == "{a,b,c}"), "({g1,g2},{a,b,c})")?;
    ensure(lattice.find(&s.all_objects()).is_some_and(|c| c.intent.is_empty()), "(G, {})")?;

    let plain = IffTheoremReport::compute(&fixtures::seq()).map_err(|e| e.to_string())?;
    let empty = IndexSet::empty(4);
    ensure(!plain.multistructure.holds && plain.multistructure.witness() == Some(&empty), "SEQ witness")?;
    let comp = plain.completion_structure.ok_or("no completion side")?;
    ensure(!comp.holds && comp.witness() == Some(&empty), "SEQ completion witness")?;
    Ok("9 concepts with TOP; both sides false at {} without".into())
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for n in 3..=5 {
        let start = Instant::now();
        let s = fixtures::exp(n).map_err(|e| e.to_string())?;
        let r = CompletionReport::compute(&s, CompletionKind::Antichain).map_err(|e| e.to_string())?;
        ensure(r.base_extent_count == 2 * n, format!("n={n}: |P_ext| = {}", r.base_extent_count))?;
        ensure(r.completed_extent_count == 1 << n, format!("n={n}: completed {}", r.completed_extent_count))?;
        if n == 5 {
            within(start, Duration::from_secs(5))?;
        }
        notes.push(format!("n={n}: {}/{} in {:?}", r.base_extent_count, r.completed_extent_count, start.elapsed()));
    }
    Ok(notes.join(", "))
}

fn criterion_6() -> Outcome {
    let s = fixtures::omega();
    let all = s.all_objects();
    ensure(s.cov_star(&all).unwrap().is_empty(), "cov*({g1,g2}) = {}")?;
    let star = s.support_closed_set().unwrap();
    let a_b = vec![Description::Omega(OmegaSymbol::A), Description::Omega(OmegaSymbol::B)];
    ensure(star == a_b, format!("D* = {star:?}"))?;
    let star_exts: BTreeSet<IndexSet> = star.iter().map(|d| s.ext(d).unwrap()).collect();
    let want: BTreeSet<IndexSet> = sets(&s, &[&["g1"], &["g2"]]).into_iter().collect();
    ensure(star_exts == want, "ext[D*]")?;
    let pext: BTreeSet<IndexSet> = s.definable_extents().unwrap().extents.into_iter().collect();
    ensure(star_exts.is_subset(&pext) && star_exts != pext, "ext[D*] strictly inside P_ext")?;
    ensure(!s.is_multistructure().unwrap().holds, "not a multistructure")?;
    Ok(format!("ext[D*] has 2 of {} extents", pext.len()))
}

const SEED: u64 = 0x5eed_0007;

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut violations = Vec::new();
    let mut posets = 0;
    let mut setups = 0;
    for round in 0..220 {
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.1..0.7);
        let rp = RandomPoset::random(&mut rng, n, density);
        violations.extend(check_poset(&rp, 1 << 20).into_iter().map(|v| format!("poset #{round}: {v}")));
        posets += 1;
        let objects = rng.gen_range(1..=4);
        let top = rng.gen_bool(0.5);
        let (setup, oracle) = explicit_setup(&mut rng, &rp, objects, top);
        violations.extend(check_setup(&setup, &oracle).into_iter().map(|v| format!("setup #{round}: {v}")));
        setups += 1;
        if round % 4 == 0 {
            let objects = rng.gen_range(1..=4);
            let top = rng.gen_bool(0.5);
            let (setup, oracle) = words_setup(&mut rng, objects, top);
            violations.extend(check_setup(&setup, &oracle).into_iter().map(|v| format!("words #{round}: {v}")));
            setups += 1;
        }
    }
    if !violations.is_empty() {
        return Err(format!("{} violations, first: {}", violations.len(), violations[0]));
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{posets} posets, {setups} setups, 0 violations in {:?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let s = fixtures::seq();
    let family = sets(&s, &[&["g1", "g2"], &["g1", "g3"], &["g1", "g2", "g3"], &["g1", "g2", "g3", "g4"]]);
    ensure(!is_extent_system(4, &family), "set-system counterexample accepted")?;

    let chain = psetup_core::FinitePoset::build(&["a", "b"], &[("a", "b")]).unwrap();
    let ac = AntichainPoset::new(chain.clone(), 10).unwrap();
    let ab = chain.subset(&["a", "b"]).unwrap();
    let b = chain.subset(&["b"]).unwrap();
    ensure(ac.leqq(&ab, &b) && ac.leqq(&b, &ab) && ab != b, "antisymmetry should fail off antichains")?;

    let num = fixtures::num();
    let g23 = num.object_set(&["g2", "g3"]).unwrap();
    let star: Vec<String> = num.cov_star(&g23).unwrap().iter().map(ToString::to_string).collect();
    ensure(star == ["value<=5", "value>=3"], format!("cov*({{g2,g3}}) = {star:?}"))?;
    Ok("3 negative cases".into())
}

/// Every naturally labelled poset on `n` elements (one per isomorphism
/// class at least): transitively closed subsets of `{(i, j) | i < j}`.
fn all_posets(n: usize) -> Vec<RandomPoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for pick in 0u32..1 << pairs.len() {
        let relation: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).map(|(_, p)| *p).collect();
        let rp = RandomPoset::from_relation(n, relation.clone());
        let closed = pairs.iter().all(|&(i, j)| rp.leq(i, j) == relation.contains(&(i, j)));
        if closed {
            out.push(rp);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut spaces = 0usize;
    for n in 1..=5 {
        for rp in all_posets(n) {
            spaces += 1;
            let semilattice = rp.has_top() && rp.is_meet_semilattice();
            let mut all_structures = true;
            for d1 in 0..n {
                for d2 in 0..n {
                    let space = psetup_core::DescriptionSpace::explicit(rp.build());
                    let setup = PatternSetup::new(
                        space,
                        [("g1", Description::Explicit(common::id(d1))), ("g2", Description::Explicit(common::id(d2)))],
                    )
                    .unwrap();
                    let report = is_pattern_structure(&setup).map_err(|e| e.to_string())?;
                    // The pair has a meet and the space has a top.
                    let lb = rp.lower_bounds(1 << d1 | 1 << d2);
                    let has_meet = (0..n).any(|m| lb >> m & 1 == 1 && rp.down(1 << m) == lb);
                    ensure(
                        report.holds == (rp.has_top() && has_meet),
                        format!("n={n} {:?} delta=({d1},{d2})", rp.relation),
                    )?;
                    ensure(setup.is_multistructure().unwrap().holds, "finite explicit multistructure")?;
                    all_structures &= report.holds;
                    checked += 1;
                }
            }
            ensure(all_structures == semilattice, format!("theorem fails for n={n} {:?}", rp.relation))?;
        }
    }
    Ok(format!("{spaces} posets, {checked} setups, 0 violations in {:?}", start.elapsed()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 SEQ ext/cov/cov*", criterion_1),
        ("2 SEQ extents and upper approximations", criterion_2),
        ("3 ITEM concept lattice", criterion_3),
        ("4 SEQ completion iff multistructure", criterion_4),
        ("5 EXP(n) extent counts", criterion_5),
        ("6 OMEGA holes", criterion_6),
        ("7 property suite", criterion_7),
        ("8 negative cases", criterion_8),
        ("9 semilattice correspondence sweep", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(note)) => println!("PASS criterion {name}: {note}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL criterion {name}: panicked");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
