//! Brute-force oracles and random generators shared by the integration
//! tests. Nothing here calls the library's closure, bound or extent code;
//! orders are recomputed from the raw relation.
#![allow(dead_code)]

use std::collections::BTreeSet;

use psetup_core::completion::{AntichainCompletion, AntichainPoset, DedekindMacNeille, DirectCompletion};
use psetup_core::setup::is_extent_system;
use psetup_core::structure::{is_pattern_structure, PatternStructure};
use psetup_core::{completion, Cover, Description, DescriptionSpace, FinitePoset, IndexSet, PatternSetup};
use rand::Rng;

pub type Mask = u32;

pub fn mask_of(s: &IndexSet) -> Mask {
    s.iter().fold(0, |m, i| m | 1 << i)
}

pub fn masks(v: &[IndexSet]) -> BTreeSet<Mask> {
    v.iter().map(mask_of).collect()
}

fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

fn minimal_masks(family: &BTreeSet<Mask>) -> BTreeSet<Mask> {
    family.iter().copied().filter(|&e| !family.iter().any(|&f| f != e && is_subset(f, e))).collect()
}

/// `{⋂S | S ⊆ family}` by enumerating every subfamily.
pub fn intersections_brute(universe: usize, family: &BTreeSet<Mask>) -> BTreeSet<Mask> {
    let members: Vec<Mask> = family.iter().copied().collect();
    let full: Mask = if universe == 32 { !0 } else { (1 << universe) - 1 };
    let mut out = BTreeSet::new();
    for pick in 0u64..1 << members.len() {
        let mut acc = full;
        for (k, m) in members.iter().enumerate() {
            if pick >> k & 1 == 1 {
                acc &= m;
            }
        }
        out.insert(acc);
    }
    out
}

/// A random naturally labelled poset: `x_i <= x_j` may only hold for `i < j`.
pub struct RandomPoset {
    pub n: usize,
    pub relation: Vec<(usize, usize)>,
    /// Reflexive-transitive closure computed by DFS.
    pub reach: Vec<Vec<bool>>,
}

pub fn id(i: usize) -> String {
    format!("x{i}")
}

impl RandomPoset {
    pub fn from_relation(n: usize, relation: Vec<(usize, usize)>) -> Self {
        let mut reach = vec![vec![false; n]; n];
        for (start, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                if row[x] {
                    continue;
                }
                row[x] = true;
                stack.extend(relation.iter().filter(|(a, _)| *a == x).map(|(_, b)| *b));
            }
        }
        RandomPoset { n, relation, reach }
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize, density: f64) -> Self {
        let mut relation = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    relation.push((i, j));
                }
            }
        }
        Self::from_relation(n, relation)
    }

    pub fn build(&self) -> FinitePoset {
        let ids: Vec<String> = (0..self.n).map(id).collect();
        let rel: Vec<(String, String)> = self.relation.iter().map(|&(a, b)| (id(a), id(b))).collect();
        FinitePoset::build(&ids, &rel).expect("acyclic by construction")
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.reach[a][b]
    }

    pub fn hasse(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b
                    && self.leq(a, b)
                    && !(0..self.n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
                {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    pub fn lower_bounds(&self, s: Mask) -> Mask {
        (0..self.n).filter(|&x| (0..self.n).all(|y| s >> y & 1 == 0 || self.leq(x, y))).fold(0, |m, x| m | 1 << x)
    }

    pub fn down(&self, s: Mask) -> Mask {
        (0..self.n).filter(|&x| (0..self.n).any(|y| s >> y & 1 == 1 && self.leq(x, y))).fold(0, |m, x| m | 1 << x)
    }

    pub fn up(&self, s: Mask) -> Mask {
        (0..self.n).filter(|&x| (0..self.n).any(|y| s >> y & 1 == 1 && self.leq(y, x))).fold(0, |m, x| m | 1 << x)
    }

    pub fn min(&self, s: Mask) -> Mask {
        (0..self.n)
            .filter(|&x| s >> x & 1 == 1 && !(0..self.n).any(|y| y != x && s >> y & 1 == 1 && self.leq(y, x)))
            .fold(0, |m, x| m | 1 << x)
    }

    pub fn max(&self, s: Mask) -> Mask {
        (0..self.n)
            .filter(|&x| s >> x & 1 == 1 && !(0..self.n).any(|y| y != x && s >> y & 1 == 1 && self.leq(x, y)))
            .fold(0, |m, x| m | 1 << x)
    }

    pub fn is_antichain(&self, s: Mask) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| x == y || s >> x & 1 == 0 || s >> y & 1 == 0 || !self.leq(x, y)))
    }

    pub fn has_top(&self) -> bool {
        (0..self.n).any(|t| (0..self.n).all(|x| self.leq(x, t)))
    }

    /// Every pair has a greatest lower bound.
    pub fn is_meet_semilattice(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| {
                let lb = self.lower_bounds(1 << a | 1 << b);
                (0..self.n).any(|m| lb >> m & 1 == 1 && self.down(1 << m) == lb)
            })
        })
    }

    /// `{A^l | A ⊆ P}`.
    pub fn cuts(&self) -> BTreeSet<Mask> {
        (0..1u32 << self.n).map(|a| self.lower_bounds(a)).collect()
    }
}

pub fn index_set(n: usize, m: Mask) -> IndexSet {
    IndexSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1))
}

/// A finite stand-in for the description space of a random setup: every
/// description that matters for extents, with the order recomputed here.
pub struct Oracle {
    pub universe: Vec<Description>,
    pub leq: Vec<Vec<bool>>,
    pub deltas: Vec<usize>,
    pub objects: usize,
    /// Whether `cov(∅) = D` has all its multi-infima.
    pub empty_ok: bool,
}

impl Oracle {
    pub fn ext(&self, d: usize) -> Mask {
        (0..self.objects).filter(|&g| self.leq[d][self.deltas[g]]).fold(0, |m, g| m | 1 << g)
    }

    pub fn pext(&self) -> BTreeSet<Mask> {
        (0..self.universe.len()).map(|d| self.ext(d)).collect()
    }

    pub fn cov(&self, a: Mask) -> Vec<usize> {
        (0..self.universe.len()).filter(|&d| is_subset(a, self.ext(d))).collect()
    }

    pub fn max(&self, s: &[usize]) -> Vec<usize> {
        s.iter().copied().filter(|&x| !s.iter().any(|&y| y != x && self.leq[x][y])).collect()
    }
}

/// Explicit space over a random poset, optionally with a synthetic top.
pub fn explicit_setup<R: Rng>(rng: &mut R, p: &RandomPoset, objects: usize, top: bool) -> (PatternSetup, Oracle) {
    let mut space = DescriptionSpace::explicit(p.build());
    if top {
        space = space.augment_with_top().unwrap();
    }
    let deltas: Vec<usize> = (0..objects).map(|_| rng.gen_range(0..p.n)).collect();
    let setup = PatternSetup::new(
        space,
        deltas.iter().enumerate().map(|(g, &d)| (format!("g{}", g + 1), Description::Explicit(id(d)))),
    )
    .unwrap();
    let mut universe: Vec<Description> = (0..p.n).map(|i| Description::Explicit(id(i))).collect();
    let size = p.n + usize::from(top);
    let mut leq = vec![vec![false; size]; size];
    for (a, row) in leq.iter_mut().enumerate().take(p.n) {
        for (b, cell) in row.iter_mut().enumerate().take(p.n) {
            *cell = p.leq(a, b);
        }
    }
    if top {
        universe.push(Description::Top);
        for row in leq.iter_mut() {
            row[p.n] = true;
        }
    }
    let oracle = Oracle { universe, leq, deltas, objects, empty_ok: true };
    (setup, oracle)
}

/// Words over `{a,b}` of length 1..=4.
pub fn words_setup<R: Rng>(rng: &mut R, objects: usize, top: bool) -> (PatternSetup, Oracle) {
    let words: Vec<String> = (0..objects)
        .map(|_| {
            let len = rng.gen_range(1..=4);
            (0..len).map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' }).collect()
        })
        .collect();
    let mut space = DescriptionSpace::words("ab");
    if top {
        space = space.augment_with_top().unwrap();
    }
    let setup = PatternSetup::new(
        space,
        words.iter().enumerate().map(|(g, w)| (format!("g{}", g + 1), Description::word(w))),
    )
    .unwrap();
    let mut pool: BTreeSet<String> = BTreeSet::new();
    for w in &words {
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                pool.insert(w[i..j].to_string());
            }
        }
    }
    // A word contained in no object description.
    pool.insert("a".repeat(5));
    let mut universe: Vec<Description> = pool.iter().map(|w| Description::word(w)).collect();
    if top {
        universe.push(Description::Top);
    }
    let size = universe.len();
    let mut leq = vec![vec![false; size]; size];
    for a in 0..size {
        for b in 0..size {
            leq[a][b] = match (&universe[a], &universe[b]) {
                (_, Description::Top) => true,
                (Description::Word(x), Description::Word(y)) => y.contains(x.as_str()),
                _ => false,
            };
        }
    }
    let deltas = words.iter().map(|w| universe.iter().position(|d| *d == Description::word(w)).unwrap()).collect();
    (setup, Oracle { universe, leq, deltas, objects, empty_ok: top })
}

/// Poset-level laws; returns violation messages.
pub fn check_poset(rp: &RandomPoset, max_antichains: usize) -> Vec<String> {
    let mut bad = Vec::new();
    let p = rp.build();
    let n = rp.n;
    let full: Mask = (1 << n) - 1;
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) != rp.leq(a, b) {
                bad.push(format!("leq({a},{b})"));
            }
        }
    }
    let hasse: BTreeSet<(usize, usize)> = p.hasse_edges().iter().copied().collect();
    if hasse != rp.hasse() {
        bad.push("hasse edges".into());
    }
    for s in 0..=full {
        let set = index_set(n, s);
        let down = p.down_closure(&set);
        let up = p.up_closure(&set);
        if mask_of(&down) != rp.down(s) || mask_of(&up) != rp.up(s) {
            bad.push(format!("closures of {s:b}"));
        }
        if mask_of(&p.lower_bounds(&set)) != rp.lower_bounds(s) {
            bad.push(format!("lower bounds of {s:b}"));
        }
        // Closure laws.
        if !set.is_subset(&down) || p.down_closure(&down) != down || !set.is_subset(&up) || p.up_closure(&up) != up {
            bad.push(format!("closure laws at {s:b}"));
        }
        for x in 0..n {
            let bigger = index_set(n, s | 1 << x);
            if !down.is_subset(&p.down_closure(&bigger)) || !up.is_subset(&p.up_closure(&bigger)) {
                bad.push(format!("monotonicity at {s:b}+{x}"));
            }
        }
        if p.minimal(&up) != p.minimal(&set) || p.maximal(&down) != p.maximal(&set) {
            bad.push(format!("min(up S) = min(S) at {s:b}"));
        }
        if mask_of(&p.minimal(&set)) != rp.min(s) {
            bad.push(format!("min of {s:b}"));
        }
        let minf = p.multi_infima(&set);
        if !minf.complete || p.down_closure(&minf.members) != p.lower_bounds(&set) {
            bad.push(format!("multi-infima of {s:b}"));
        }
        if let Some(m) = p.meet(&set) {
            if minf.members != IndexSet::singleton(n, m) {
                bad.push(format!("meet vs minf at {s:b}"));
            }
        }
        if rp.is_antichain(s) && mask_of(&p.maximal(&down)) != s {
            bad.push(format!("C = max(down C) at {s:b}"));
        }
    }
    let report = p.classify();
    if !report.is_multilattice {
        bad.push("finite poset not a multilattice".into());
    }
    if report.is_meet_semilattice != rp.is_meet_semilattice() {
        bad.push("meet-semilattice classification".into());
    }
    let ac = AntichainPoset::new(p.clone(), max_antichains).unwrap();
    let ac_oracle: Vec<Mask> = (0..=full).filter(|&s| rp.is_antichain(s)).collect();
    if ac.len() != ac_oracle.len() {
        bad.push("antichain count".into());
    }
    let ac_lattice = ac.poset().is_lattice();
    if !ac.singleton_embedding_holds() || !ac_lattice || !ac.is_distributive() {
        bad.push("antichain completion laws".into());
    }
    let bv = completion::check_boldi_vigna(&p, max_antichains).unwrap();
    if !bv.holds || bv.holds != ac_lattice {
        bad.push("Boldi-Vigna".into());
    }
    if !completion::antichain_to_multilattice_check(&p, max_antichains).unwrap().holds() {
        bad.push("lattice of antichains vs multisemilattice".into());
    }
    let dm = DedekindMacNeille::new(p.clone(), 1 << 12).unwrap();
    if masks(dm.cuts()) != rp.cuts() || !dm.embedding_holds() || !is_complete_lattice(dm.poset()) {
        bad.push("Dedekind-MacNeille".into());
    }
    bad
}

/// Setup-level laws against the oracle; returns violation messages.
pub fn check_setup(s: &PatternSetup, o: &Oracle) -> Vec<String> {
    let mut bad = Vec::new();
    let n = s.len();
    let full: Mask = (1 << n) - 1;
    let pext = o.pext();

    for (i, d) in o.universe.iter().enumerate() {
        if mask_of(&s.ext(d).unwrap()) != o.ext(i) {
            bad.push(format!("ext({d})"));
        }
        for (j, c) in o.universe.iter().enumerate() {
            if o.leq[j][i] && !is_subset(o.ext(i), o.ext(j)) {
                bad.push(format!("ext not order-reversing at {c} <= {d}"));
            }
        }
    }
    let fam = s.definable_extents().unwrap();
    if masks(&fam.extents) != pext {
        bad.push("definable extents".into());
    }
    if !is_extent_system(n, &fam.extents) {
        bad.push("P_ext is not an extent system".into());
    }
    let rep = s.minimal_representation().unwrap();
    if masks(&rep.definable_extents().unwrap().extents) != pext {
        bad.push("minimal representation extents".into());
    }

    let cover_set = |a: Mask| -> Option<BTreeSet<Description>> {
        match s.cov(&index_set(n, a)).unwrap() {
            Cover::All => None,
            Cover::Finite(v) => Some(v.into_iter().collect()),
            Cover::OmegaChain { .. } => unreachable!(),
        }
    };
    for a in 0..=full {
        let cov = cover_set(a);
        let oracle_cov: BTreeSet<Description> = o.cov(a).into_iter().map(|i| o.universe[i].clone()).collect();
        match &cov {
            None => assert_eq!(a, 0),
            Some(c) if *c != oracle_cov => bad.push(format!("cov({a:b})")),
            _ => {}
        }
        for x in 0..n {
            let b = a | 1 << x;
            if let (Some(big), Some(small)) = (cover_set(b), cov.as_ref()) {
                if !big.is_subset(small) {
                    bad.push(format!("cov not order-reversing at {a:b} <= {b:b}"));
                }
            }
        }
        // ext[cov(A)] = ↑A ∩ P_ext
        let image: BTreeSet<Mask> = o.cov(a).into_iter().map(|d| o.ext(d)).collect();
        let above: BTreeSet<Mask> = pext.iter().copied().filter(|&e| is_subset(a, e)).collect();
        if image != above {
            bad.push(format!("ext[cov({a:b})]"));
        }
        let approx = masks(&s.upper_approximations(&index_set(n, a)).unwrap());
        if approx != minimal_masks(&above) {
            bad.push(format!("upper approximations of {a:b}"));
        }
    }

    let multi = s.is_multistructure().unwrap();
    let oracle_multi = o.empty_ok
        && (1..=full).all(|a| {
            let cov = o.cov(a);
            let max = o.max(&cov);
            cov.iter().all(|&c| max.iter().any(|&m| o.leq[c][m]))
        });
    if multi.holds != oracle_multi {
        bad.push("multistructure verdict".into());
    }
    if multi.holds {
        for a in 0..=full {
            let star = s.cov_star(&index_set(n, a)).unwrap();
            let exts: BTreeSet<Mask> = star.iter().map(|d| mask_of(&s.ext(d).unwrap())).collect();
            let above: BTreeSet<Mask> = pext.iter().copied().filter(|&e| is_subset(a, e)).collect();
            if minimal_masks(&exts) != minimal_masks(&above) {
                bad.push(format!("upper approximations via cov* at {a:b}"));
            }
        }
        let star_exts: BTreeSet<Mask> =
            s.support_closed_set().unwrap().iter().map(|d| mask_of(&s.ext(d).unwrap())).collect();
        if star_exts != pext {
            bad.push("P_ext = ext[D*]".into());
        }
    }

    let closed = intersections_brute(n, &pext);
    let ac = AntichainCompletion::new(s).unwrap();
    let dc = DirectCompletion::new(s).unwrap();
    if masks(&ac.extents()) != closed || masks(&dc.extents()) != closed {
        bad.push("completed extents".into());
    }
    let ac_structure = ac.is_structure().unwrap();
    if ac_structure.holds != multi.holds {
        bad.push("completion iff multistructure".into());
    }
    if ac_structure.holds {
        for a in 0..=full {
            let a_set = index_set(n, a);
            let intent = ac.int(&a_set).unwrap();
            if intent != s.cov_star(&a_set).unwrap() {
                bad.push(format!("int of completion vs cov* at {a:b}"));
            }
            let closure = ac.ext(&intent).unwrap();
            if !a_set.is_subset(&closure) || ac.ext(&ac.int(&closure).unwrap()).unwrap() != closure {
                bad.push(format!("completion closure laws at {a:b}"));
            }
        }
    }

    let structure = is_pattern_structure(s).unwrap();
    if structure.holds {
        let ps = PatternStructure::new(s.clone()).unwrap();
        for a in 0..=full {
            let a_set = index_set(n, a);
            let c = ps.closure(&a_set).unwrap();
            if !a_set.is_subset(&c) || ps.closure(&c).unwrap() != c {
                bad.push(format!("ext o int closure at {a:b}"));
            }
            for x in 0..n {
                if !c.is_subset(&ps.closure(&index_set(n, a | 1 << x)).unwrap()) {
                    bad.push(format!("ext o int monotonicity at {a:b}"));
                }
            }
            let int = ps.int(&a_set).unwrap();
            for (i, d) in o.universe.iter().enumerate() {
                let j = o.universe.iter().position(|u| *u == int);
                let below = j.is_some_and(|j| o.leq[i][j]);
                if is_subset(a, o.ext(i)) != below {
                    bad.push(format!("Galois law at {a:b}, {d}"));
                }
            }
        }
        let lattice = ps.concept_lattice().unwrap();
        let extents: BTreeSet<Mask> = lattice.concepts.iter().map(|c| mask_of(&c.extent)).collect();
        if extents != pext || extents != intersections_brute(n, &pext) {
            bad.push("structure extents are not a closure system".into());
        }
    }
    bad
}

/// A finite lattice with top and bottom.
fn is_complete_lattice(p: &FinitePoset) -> bool {
    p.is_lattice() && p.top().is_some() && p.bottom().is_some()
}
