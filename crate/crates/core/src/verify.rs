//! Exhaustive and seeded-random sweeps that check the rough set / matroid
//! correspondences on every small instance.
//!
//! Each sweep returns a [`VerifyReport`]. Random instances are drawn
//! sequentially from a ChaCha stream seeded by [`VerifyConfig::seed`], then
//! checked in parallel; failures are sorted before reporting, so a report is a
//! function of its configuration alone.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::binrel::{
    is_binary_dependence, is_equivalence, iso_f, partition_from_matrix_gf2, relation_from_matrix,
    roundtrip_matroid_equal, verify_homomorphism, PairRelation,
};
use crate::error::{Error, Result};
use crate::fields::{FieldElement, FieldSpec};
use crate::linalg::ExactMatrix;
use crate::matroid::{
    bases_via_ones, circuits_via_nullspace, downward_closure, matroids_equal, min_family,
    partition_bases, partition_circuits, partition_independent, VectorMatroid, MAX_GROUND,
};
use crate::roughsets::{enumerate_partitions, Partition, MAX_ENUMERATION_UNIVERSE};
use crate::sets::{mask_to_indices, ElementSet, SetFamily, Universe};

/// Largest number of rows in randomly drawn matrices.
pub const RANDOM_MAX_ROWS: usize = 6;

/// Largest number of columns in randomly drawn matrices outside `t2`.
pub const RANDOM_MAX_COLS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Partition matroid equals the vector matroid of the incidence matrix.
    T1,
    /// Circuits are the minimal nonempty null space supports.
    T2,
    /// Partition bases are the minimal supports of solutions to `B x = 1`.
    T3,
    /// Partitions under meet embed into circuit families under intersection.
    T4,
    /// Relation, binary dependence, rough-set and axiom properties.
    Props,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::T4,
        Theorem::Props,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::T1 => "t1",
            Theorem::T2 => "t2",
            Theorem::T3 => "t3",
            Theorem::T4 => "t4",
            Theorem::Props => "props",
        }
    }

    fn default_max_n(self) -> usize {
        match self {
            Theorem::T1 | Theorem::T3 | Theorem::Props => 6,
            Theorem::T2 => 8,
            Theorem::T4 => 5,
        }
    }

    fn default_samples(self) -> usize {
        match self {
            Theorem::T2 => 200,
            Theorem::Props => 500,
            _ => 0,
        }
    }

    fn max_n_cap(self) -> usize {
        match self {
            Theorem::T2 => MAX_GROUND,
            _ => MAX_ENUMERATION_UNIVERSE,
        }
    }

    fn is_randomized(self) -> bool {
        matches!(self, Theorem::T2 | Theorem::Props)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Theorem, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| format!("unknown theorem {s:?} (expected t1, t2, t3, t4 or props)"))
    }
}

/// Sweep parameters. Unset fields take per-theorem defaults: `max_n` is 6 for
/// t1, t3 and props, 8 for t2 (random matrix width) and 5 for t4; `samples`
/// is 200 for t2 (plus half as many over GF(3)) and 500 for props.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: Option<usize>,
    pub seed: u64,
    pub samples: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            max_n: None,
            seed: 42,
            samples: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub theorem: Theorem,
    pub max_n: usize,
    pub instances: usize,
    /// Counterexample descriptions in sorted order; empty on success.
    pub failures: Vec<String>,
    pub elapsed: Duration,
    /// Seed of the random stream, for randomized sweeps.
    pub seed: Option<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        write!(
            f,
            "{} {}: max_n={} instances={} failures={} seed={}",
            self.theorem,
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_n,
            self.instances,
            self.failures.len(),
            seed
        )
    }
}

/// Collects counterexamples for one sweep.
#[derive(Default)]
struct Tally {
    instances: usize,
    failures: Vec<String>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.failures.extend(other.failures);
        self
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(describe());
        }
    }

    fn check_result(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.failures.push(format!("{}: error {e}", describe())),
        }
    }
}

fn par_tally<T, F>(items: &[T], check: F) -> Tally
where
    T: Sync,
    F: Fn(&T, &mut Tally) + Sync,
{
    items
        .par_iter()
        .map(|item| {
            let mut t = Tally {
                instances: 1,
                ..Tally::default()
            };
            check(item, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

pub fn run(theorem: Theorem, config: &VerifyConfig) -> Result<VerifyReport> {
    let max_n = config.max_n.unwrap_or(theorem.default_max_n());
    if max_n == 0 {
        return Err(Error::EmptyUniverse);
    }
    let cap = theorem.max_n_cap();
    if max_n > cap {
        return Err(Error::UniverseTooLarge { n: max_n, cap });
    }
    let samples = config.samples.unwrap_or(theorem.default_samples());
    let start = Instant::now();
    let tally = match theorem {
        Theorem::T1 => sweep_t1(max_n)?,
        Theorem::T2 => sweep_t2(max_n, samples, config.seed),
        Theorem::T3 => sweep_t3(max_n)?,
        Theorem::T4 => sweep_t4(max_n)?,
        Theorem::Props => sweep_props(max_n, samples, config.seed)?,
    };
    let mut failures = tally.failures;
    failures.sort();
    Ok(VerifyReport {
        theorem,
        max_n,
        instances: tally.instances,
        failures,
        elapsed: start.elapsed(),
        seed: theorem.is_randomized().then_some(config.seed),
    })
}

pub fn run_all(config: &VerifyConfig) -> Result<Vec<VerifyReport>> {
    Theorem::ALL.iter().map(|&t| run(t, config)).collect()
}

/// All partitions of `x1 .. xk` for every `k` in `1..=max_n`.
pub fn partitions_up_to(max_n: usize) -> Result<Vec<Partition>> {
    let mut all = Vec::new();
    for n in 1..=max_n {
        all.extend(enumerate_partitions(&Universe::with_size(n)?)?);
    }
    Ok(all)
}

const SWEEP_FIELDS: [FieldSpec; 3] = [FieldSpec::Binary, FieldSpec::Prime(3), FieldSpec::Rational];

fn sweep_t1(max_n: usize) -> Result<Tally> {
    let instances: Vec<(Partition, FieldSpec)> = partitions_up_to(max_n)?
        .into_iter()
        .flat_map(|p| SWEEP_FIELDS.map(|f| (p.clone(), f)))
        .collect();
    Ok(par_tally(&instances, |(p, field), t| {
        let m = VectorMatroid::new(p.encode_matrix(*field));
        let tag = || format!("t1 [{p}] over {field}");
        t.check_result(m.circuits().map(|c| c == partition_circuits(p)), || {
            format!("{}: circuits differ from block pairs", tag())
        });
        t.check_result(
            m.bases().and_then(|b| partition_bases(p).map(|pb| pb == b)),
            || format!("{}: bases differ from transversals", tag()),
        );
        check_matroid_axioms(&m, t, &tag);
    }))
}

fn sweep_t2(max_n: usize, samples: usize, seed: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrices = Vec::with_capacity(samples + samples / 2);
    for (spec, count) in [
        (FieldSpec::Binary, samples),
        (FieldSpec::Prime(3), samples / 2),
    ] {
        for _ in 0..count {
            let rows = rng.gen_range(1..=RANDOM_MAX_ROWS);
            let cols = rng.gen_range(1..=max_n);
            matrices.push(random_matrix(&mut rng, spec, rows, cols));
        }
    }
    par_tally(&matrices, |a, t| {
        let tag = || format!("t2 {}", describe_matrix(a));
        let m = VectorMatroid::new(a.clone());
        let brute = m.circuits();
        let kernel = circuits_via_nullspace(a);
        match (brute, kernel) {
            (Ok(b), Ok(k)) => t.check(b == k, || format!("{}: brute {b:?} vs kernel {k:?}", tag())),
            (b, k) => t
                .failures
                .push(format!("{}: errors {:?} / {:?}", tag(), b.err(), k.err())),
        }
        check_matroid_axioms(&m, t, &tag);
    })
}

fn sweep_t3(max_n: usize) -> Result<Tally> {
    let partitions = partitions_up_to(max_n)?;
    Ok(par_tally(&partitions, |p, t| {
        let tag = || format!("t3 [{p}]");
        let b = p.encode_matrix(FieldSpec::Binary);
        let (ones, transversals, upper) =
            match (bases_via_ones(&b), partition_bases(p), p.upper_full_sets()) {
                (Ok(o), Ok(tr), Ok(u)) => (o, tr, u),
                (o, tr, u) => {
                    t.failures.push(format!(
                        "{}: errors {:?} {:?} {:?}",
                        tag(),
                        o.err(),
                        tr.err(),
                        u.err()
                    ));
                    return;
                }
            };
        t.check(ones == transversals, || {
            format!("{}: ones-supports {ones:?} vs transversals", tag())
        });
        t.check(min_family(&upper) == transversals, || {
            format!(
                "{}: minimal upper-full sets differ from transversals",
                tag()
            )
        });
        // Every support of a solution of Bx = 1 has full upper approximation.
        match b.solve_ones().enumerate() {
            Ok(solutions) => {
                for x in solutions {
                    let s = p
                        .universe()
                        .subset_of_indices(x.nonzero_indices())
                        .expect("indices in range");
                    t.check(upper.contains(&s), || {
                        format!("{}: support {s} not upper-full", tag())
                    });
                }
            }
            Err(e) => t.failures.push(format!("{}: {e}", tag())),
        }
        // The matroid M_GF(2)[B(R)] obeys the axioms.
        check_matroid_axioms(&VectorMatroid::new(b), t, &tag);
    }))
}

fn sweep_t4(max_n: usize) -> Result<Tally> {
    let mut total = Tally::default();
    for n in 1..=max_n {
        let partitions: Vec<Partition> = enumerate_partitions(&Universe::with_size(n)?)?.collect();
        let images: Vec<Result<SetFamily>> = partitions.par_iter().map(iso_f).collect();
        let mut tally = Tally {
            instances: partitions.len(),
            ..Tally::default()
        };
        let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
        for (p, image) in partitions.iter().zip(&images) {
            match image {
                Ok(image) => {
                    tally.check(*image == partition_circuits(p), || {
                        format!("t4 [{p}]: image differs from block pairs")
                    });
                    tally.check(seen.insert(image.index_sets().to_vec()), || {
                        format!("t4 [{p}]: image {image:?} is shared with another partition")
                    });
                }
                Err(e) => tally.failures.push(format!("t4 [{p}]: {e}")),
            }
        }
        let pairs: Vec<(usize, usize)> = (0..partitions.len())
            .flat_map(|i| (0..partitions.len()).map(move |j| (i, j)))
            .collect();
        let homomorphism = par_tally(&pairs, |&(i, j), t| {
            let (a, b) = (&partitions[i], &partitions[j]);
            t.check_result(verify_homomorphism(a, b), || {
                format!("t4 [{a}] meet [{b}]: image of meet is not the intersection")
            });
        });
        total = total.merge(tally).merge(homomorphism);
    }
    Ok(total)
}

fn sweep_props(max_n: usize, samples: usize, seed: u64) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let partitions = partitions_up_to(max_n)?;

    let mut tally = check_field_axioms(&mut rng, samples);
    tally = tally.merge(sweep_rough_set_laws(&partitions));
    tally = tally.merge(sweep_meet_laws(max_n.min(4))?);
    tally = tally.merge(sweep_partition_props(&partitions));

    let bdms: Vec<ExactMatrix> = (0..samples)
        .map(|_| random_binary_dependence(&mut rng, RANDOM_MAX_ROWS, RANDOM_MAX_COLS))
        .collect();
    tally = tally.merge(par_tally(&bdms, |a, t| {
        let tag = || format!("props bdm {}", describe_matrix(a));
        t.check_result(roundtrip_matroid_equal(a), || {
            format!("{}: roundtrip matroid differs", tag())
        });
    }));

    let binary: Vec<ExactMatrix> = (0..samples)
        .map(|_| {
            let rows = rng.gen_range(1..=RANDOM_MAX_ROWS);
            let cols = rng.gen_range(1..=RANDOM_MAX_COLS);
            random_matrix(&mut rng, FieldSpec::Binary, rows, cols)
        })
        .collect();
    tally = tally.merge(par_tally(&binary, |a, t| {
        let tag = || format!("props gf2 {}", describe_matrix(a));
        t.check(is_equivalence(&relation_from_matrix(a)), || {
            format!("{}: relation is not an equivalence", tag())
        });
        check_kernel_supports_dependent(a, t, &tag);
    }));

    // Row-equivalent matrices share a matroid and so must share a relation.
    let transformed: Vec<(ExactMatrix, ExactMatrix)> = (0..samples / 5)
        .map(|_| {
            let rows = rng.gen_range(1..=RANDOM_MAX_ROWS);
            let cols = rng.gen_range(1..=RANDOM_MAX_COLS);
            let a = random_matrix_without_zero_columns(&mut rng, FieldSpec::Binary, rows, cols);
            let shuffle = random_invertible(&mut rng, FieldSpec::Binary, rows);
            let b = a.left_multiply(&shuffle).expect("shapes agree");
            (a, b)
        })
        .collect();
    tally = tally.merge(par_tally(&transformed, |(a, b), t| {
        let tag = || format!("props row-op {}", describe_matrix(a));
        match matroids_equal(
            &VectorMatroid::new(a.clone()),
            &VectorMatroid::new(b.clone()),
        ) {
            Ok(true) => t.check(relation_from_matrix(a) == relation_from_matrix(b), || {
                format!("{}: equal matroids but different relations", tag())
            }),
            Ok(false) => t
                .failures
                .push(format!("{}: row operations changed the matroid", tag())),
            Err(e) => t.failures.push(format!("{}: {e}", tag())),
        }
    }));

    // Literal membership test against the circuit-size criterion.
    let mut small: Vec<ExactMatrix> = (0..samples)
        .map(|_| {
            let rows = rng.gen_range(1..=RANDOM_MAX_ROWS);
            let cols = rng.gen_range(1..=RANDOM_MAX_COLS);
            if rng.gen_bool(0.5) {
                random_binary_dependence(&mut rng, rows, cols)
            } else {
                random_matrix(&mut rng, FieldSpec::Binary, rows, cols)
            }
        })
        .collect();
    small.extend(all_binary_matrices(2, 4));
    tally = tally.merge(par_tally(&small, |a, t| {
        t.check_result(
            is_binary_dependence(a).map(|v| v.is_member() == is_binary_dependence_literal(a)),
            || {
                format!(
                    "props bdm-criterion {}: criteria disagree",
                    describe_matrix(a)
                )
            },
        );
    }));

    tally = tally.merge(check_min_stability(&mut rng, samples));
    Ok(tally)
}

fn check_field_axioms(rng: &mut ChaCha8Rng, samples: usize) -> Tally {
    let mut t = Tally::default();
    for p in [2u64, 3, 5, 7] {
        let spec = FieldSpec::prime(p).expect("small prime");
        let all = spec.elements().expect("finite");
        for a in &all {
            for b in &all {
                for c in &all {
                    t.instances += 1;
                    field_laws(a, b, c, &mut t);
                }
            }
        }
    }
    let mut random_rational = || {
        let n = rng.gen_range(-20i64..=20);
        let d = rng.gen_range(1i64..=12);
        FieldElement::from_ratio(n, d).expect("nonzero denominator")
    };
    for _ in 0..samples {
        let (a, b, c) = (random_rational(), random_rational(), random_rational());
        t.instances += 1;
        field_laws(&a, &b, &c, &mut t);
        let reparsed = FieldElement::parse(FieldSpec::Rational, &a.to_string());
        t.check(reparsed.as_ref() == Ok(&a), || {
            format!("props field q: {a} not canonical")
        });
        let q: &BigRational = a.as_rational().expect("rational");
        t.check(q.denom() > &0.into(), || {
            format!("props field q: {a} has non-positive denominator")
        });
    }
    t
}

fn field_laws(a: &FieldElement, b: &FieldElement, c: &FieldElement, t: &mut Tally) {
    let spec = a.spec();
    let tag = || format!("props field {spec} ({a}, {b}, {c})");
    let (zero, one) = (spec.zero(), spec.one());
    let ok = (|| -> Result<bool> {
        let mut ok = a.add(b)? == b.add(a)? && a.mul(b)? == b.mul(a)?;
        ok &= a.add(b)?.add(c)? == a.add(&b.add(c)?)?;
        ok &= a.mul(b)?.mul(c)? == a.mul(&b.mul(c)?)?;
        ok &= a.mul(&b.add(c)?)? == a.mul(b)?.add(&a.mul(c)?)?;
        ok &= a.add(&zero)? == *a && a.mul(&one)? == *a;
        ok &= a.add(&a.neg())?.is_zero();
        if !a.is_zero() {
            ok &= a.mul(&a.inv()?)?.is_one();
        }
        Ok(ok)
    })();
    t.check_result(ok, tag);
}

fn sweep_rough_set_laws(partitions: &[Partition]) -> Tally {
    par_tally(partitions, |p, t| {
        let u = p.universe();
        for mask in u.all_subset_masks() {
            let x = ElementSet::from_mask(u, mask);
            let lower = p.lower_approx(&x).expect("same universe");
            let upper = p.upper_approx(&x).expect("same universe");
            t.check(lower.is_subset_of(&x) && x.is_subset_of(&upper), || {
                format!("props approx [{p}] X={{{x}}}: lower/upper inclusion fails")
            });
            let dual = p
                .upper_approx(&x.complement())
                .expect("same universe")
                .complement();
            t.check(lower == dual, || {
                format!("props approx [{p}] X={{{x}}}: duality fails")
            });
        }
    })
}

fn sweep_meet_laws(max_n: usize) -> Result<Tally> {
    let mut total = Tally::default();
    for n in 1..=max_n {
        let ps: Vec<Partition> = enumerate_partitions(&Universe::with_size(n)?)?.collect();
        let len = ps.len();
        let triples: Vec<(usize, usize, usize)> = (0..len)
            .flat_map(|i| (0..len).flat_map(move |j| (0..len).map(move |k| (i, j, k))))
            .collect();
        total = total.merge(par_tally(&triples, |&(i, j, k), t| {
            let (a, b, c) = (&ps[i], &ps[j], &ps[k]);
            let meet = |x: &Partition, y: &Partition| x.meet(y).expect("same universe");
            t.check(meet(a, a) == *a, || {
                format!("props meet [{a}]: not idempotent")
            });
            t.check(meet(a, b) == meet(b, a), || {
                format!("props meet [{a}] [{b}]: not commutative")
            });
            t.check(meet(&meet(a, b), c) == meet(a, &meet(b, c)), || {
                format!("props meet [{a}] [{b}] [{c}]: not associative")
            });
            // The meet is the intersection of the two equivalence relations.
            let rel = |x: &Partition| PairRelation::from_partition(x);
            let both: Vec<(usize, usize)> = rel(a)
                .pairs()
                .filter(|&(x, y)| rel(b).contains(x, y))
                .collect();
            t.check(rel(&meet(a, b)).pairs().eq(both), || {
                format!("props meet [{a}] [{b}]: not the relation intersection")
            });
        }));
    }
    Ok(total)
}

fn sweep_partition_props(partitions: &[Partition]) -> Tally {
    par_tally(partitions, |p, t| {
        let tag = || format!("props [{p}]");
        let b = p.encode_matrix(FieldSpec::Binary);
        t.check(partition_from_matrix_gf2(&b).as_ref() == Ok(p), || {
            format!("{}: partition read back from B(R) differs", tag())
        });
        t.check(
            relation_from_matrix(&b) == PairRelation::from_partition(p),
            || format!("{}: relation read back from B(R) differs", tag()),
        );
        for spec in [FieldSpec::Binary, FieldSpec::Rational] {
            let verdict = is_binary_dependence(&p.encode_matrix(spec));
            t.check(verdict.as_ref().is_ok_and(|v| v.is_member()), || {
                format!(
                    "{}: B(R) over {spec} not a binary dependence matrix: {verdict:?}",
                    tag()
                )
            });
        }
        // Column sums are one; row sums are block sizes.
        for c in 0..b.cols() {
            let ones = (0..b.rows()).filter(|&r| b.get(r, c).is_one()).count();
            t.check(ones == 1, || {
                format!("{}: column {c} has {ones} ones", tag())
            });
        }
        for (r, block) in p.blocks().iter().enumerate() {
            let ones = b.row(r).iter().filter(|e| e.is_one()).count();
            t.check(ones == block.len(), || {
                format!("{}: row {r} sum {ones}", tag())
            });
        }
        // Subsets of transversals are exactly the partition-independent sets.
        let u = p.universe();
        match partition_bases(p).and_then(|bases| downward_closure(&bases)) {
            Ok(closure) => {
                let independent = u.all_subset_masks().filter(|&m| {
                    partition_independent(p, &ElementSet::from_mask(u, m)).unwrap_or(false)
                });
                t.check(closure == SetFamily::from_masks(u, independent), || {
                    format!(
                        "{}: closure of transversals differs from independent sets",
                        tag()
                    )
                });
            }
            Err(e) => t.failures.push(format!("{}: {e}", tag())),
        }
    })
}

fn check_kernel_supports_dependent(a: &ExactMatrix, t: &mut Tally, tag: &dyn Fn() -> String) {
    match a.null_space_basis().enumerate() {
        Ok(kernel) => {
            for v in kernel {
                let s = v.nonzero_indices();
                if !s.is_empty() {
                    t.check(!a.columns_independent_at(&s), || {
                        format!("{}: kernel support {s:?} is independent", tag())
                    });
                }
            }
        }
        Err(e) => t.failures.push(format!("{}: {e}", tag())),
    }
}

/// If F ⊆ S and Min(S) ⊆ Min(F) then Min(S) = Min(F), on random families.
fn check_min_stability(rng: &mut ChaCha8Rng, samples: usize) -> Tally {
    let u = Universe::with_size(5).expect("nonempty");
    let mut t = Tally::default();
    for _ in 0..samples {
        let size = rng.gen_range(0..=8);
        let s_masks: Vec<u64> = (0..size).map(|_| rng.gen_range(0..32u64)).collect();
        let s = SetFamily::from_masks(&u, s_masks.clone());
        let min_s = s.minimal();
        // F = Min(S) plus a random part of S, so the hypothesis usually holds.
        let mut f_masks = min_s.masks();
        f_masks.extend(s_masks.iter().copied().filter(|_| rng.gen_bool(0.5)));
        let f = SetFamily::from_masks(&u, f_masks);
        t.instances += 1;
        if f.is_subfamily_of(&s) && min_s.is_subfamily_of(&f.minimal()) {
            t.check(min_s == f.minimal(), || {
                format!("props min-stability S={s:?} F={f:?}")
            });
        }
    }
    t
}

/// The independence axioms on the independent sets and the circuit axioms
/// (empty set excluded, no nesting, elimination) on the circuits.
fn check_matroid_axioms(m: &VectorMatroid, t: &mut Tally, tag: &dyn Fn() -> String) {
    match m.independent_sets() {
        Ok(ind) => {
            for v in independence_axiom_violations(&ind) {
                t.failures.push(format!("{}: {v}", tag()));
            }
        }
        Err(e) => t.failures.push(format!("{}: {e}", tag())),
    }
    match m.circuits() {
        Ok(circ) => {
            for v in circuit_axiom_violations(&circ) {
                t.failures.push(format!("{}: {v}", tag()));
            }
        }
        Err(e) => t.failures.push(format!("{}: {e}", tag())),
    }
}

/// Violations of (I1) ∅ ∈ I, (I2) closure under subsets and (I3) augmentation.
pub fn independence_axiom_violations(independent: &SetFamily) -> Vec<String> {
    let masks: HashSet<u64> = independent.masks().into_iter().collect();
    let mut out = Vec::new();
    if !masks.contains(&0) {
        out.push("I1: empty set is not independent".to_string());
    }
    for &m in &masks {
        for x in mask_to_indices(m) {
            if !masks.contains(&(m & !(1 << x))) {
                out.push(format!(
                    "I2: {:?} independent but dropping {x} is not",
                    mask_to_indices(m)
                ));
            }
        }
    }
    for &small in &masks {
        for &big in &masks {
            if small.count_ones() < big.count_ones()
                && !mask_to_indices(big & !small)
                    .into_iter()
                    .any(|e| masks.contains(&(small | 1 << e)))
            {
                out.push(format!(
                    "I3: {:?} cannot be augmented from {:?}",
                    mask_to_indices(small),
                    mask_to_indices(big)
                ));
            }
        }
    }
    out.sort();
    out
}

/// Violations of (C1) ∅ ∉ C, (C2) no member contains another and (C3)
/// elimination: for distinct C1, C2 sharing x, some circuit lies in
/// (C1 ∪ C2) − {x}.
pub fn circuit_axiom_violations(circuits: &SetFamily) -> Vec<String> {
    let masks = circuits.masks();
    let mut out = Vec::new();
    if masks.contains(&0) {
        out.push("C1: empty set is a circuit".to_string());
    }
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            if i == j {
                continue;
            }
            if a & b == a {
                out.push(format!(
                    "C2: {:?} inside {:?}",
                    mask_to_indices(a),
                    mask_to_indices(b)
                ));
            }
            if i < j {
                for x in mask_to_indices(a & b) {
                    let rest = (a | b) & !(1 << x);
                    if !masks.iter().any(|&c| c & !rest == 0) {
                        out.push(format!(
                            "C3: no circuit in ({:?} ∪ {:?}) - {x}",
                            mask_to_indices(a),
                            mask_to_indices(b)
                        ));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The literal binary-dependence test: no zero column, and every dependent
/// column subset of size at least two contains a pair of rank below two.
pub fn is_binary_dependence_literal(a: &ExactMatrix) -> bool {
    let n = a.cols();
    if (0..n).any(|c| a.is_zero_column(c)) {
        return false;
    }
    let pair_dependent = |i: usize, j: usize| !a.columns_independent_at(&[i, j]);
    (0u64..1 << n).all(|mask| {
        let idx = mask_to_indices(mask);
        idx.len() < 2
            || a.columns_independent_at(&idx)
            || idx
                .iter()
                .enumerate()
                .any(|(k, &i)| idx[k + 1..].iter().any(|&j| pair_dependent(i, j)))
    })
}

pub fn random_matrix<R: Rng>(
    rng: &mut R,
    spec: FieldSpec,
    rows: usize,
    cols: usize,
) -> ExactMatrix {
    let p = spec
        .modulus()
        .expect("random matrices are drawn over finite fields");
    let entries = (0..rows * cols)
        .map(|_| FieldElement::from_i64(spec, rng.gen_range(0..p) as i64))
        .collect();
    ExactMatrix::new(spec, rows, cols, entries, None).expect("shape is consistent")
}

fn random_matrix_without_zero_columns<R: Rng>(
    rng: &mut R,
    spec: FieldSpec,
    rows: usize,
    cols: usize,
) -> ExactMatrix {
    loop {
        let m = random_matrix(rng, spec, rows, cols);
        if (0..cols).all(|c| !m.is_zero_column(c)) {
            return m;
        }
    }
}

/// A uniformly drawn invertible `n x n` matrix, by rejection.
pub fn random_invertible<R: Rng>(rng: &mut R, spec: FieldSpec, n: usize) -> ExactMatrix {
    loop {
        let m = random_matrix(rng, spec, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// A GF(2) binary dependence matrix: columns copy a few linearly independent
/// vectors, so every dependency comes from two equal columns.
pub fn random_binary_dependence<R: Rng>(
    rng: &mut R,
    max_rows: usize,
    max_cols: usize,
) -> ExactMatrix {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    let classes = rng.gen_range(1..=rows.min(cols));
    let basis = random_invertible(rng, FieldSpec::Binary, rows);
    let picks: Vec<usize> = (0..cols).map(|_| rng.gen_range(0..classes)).collect();
    let entries = (0..rows)
        .flat_map(|r| picks.iter().map(move |&k| (r, k)))
        .map(|(r, k)| basis.get(r, k).clone())
        .collect();
    ExactMatrix::new(FieldSpec::Binary, rows, cols, entries, None).expect("shape is consistent")
}

/// Every 0/1 matrix with `rows` rows and `1..=max_cols` columns over GF(2).
pub fn all_binary_matrices(rows: usize, max_cols: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    for cols in 1..=max_cols {
        for bits in 0u64..(1 << (rows * cols)) {
            let grid: Vec<Vec<i64>> = (0..rows)
                .map(|r| {
                    (0..cols)
                        .map(|c| ((bits >> (r * cols + c)) & 1) as i64)
                        .collect()
                })
                .collect();
            out.push(ExactMatrix::from_rows(FieldSpec::Binary, &grid).expect("nonempty"));
        }
    }
    out
}

fn describe_matrix(a: &ExactMatrix) -> String {
    let rows: Vec<String> = (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("{}[{}]", a.spec(), rows.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids() {
        for t in Theorem::ALL {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert!("t5".parse::<Theorem>().is_err());
    }

    #[test]
    fn guards() {
        let cfg = VerifyConfig {
            max_n: Some(13),
            ..VerifyConfig::default()
        };
        assert!(matches!(
            run(Theorem::T1, &cfg),
            Err(Error::UniverseTooLarge { n: 13, cap: 12 })
        ));
        let cfg = VerifyConfig {
            max_n: Some(17),
            ..VerifyConfig::default()
        };
        assert!(matches!(
            run(Theorem::T2, &cfg),
            Err(Error::UniverseTooLarge { n: 17, cap: 16 })
        ));
        let cfg = VerifyConfig {
            max_n: Some(0),
            ..VerifyConfig::default()
        };
        assert_eq!(run(Theorem::T3, &cfg).unwrap_err(), Error::EmptyUniverse);
    }

    #[test]
    fn axiom_checkers_catch_violations() {
        let u = Universe::with_size(3).unwrap();
        let no_empty = SetFamily::from_masks(&u, [0b001]);
        assert!(independence_axiom_violations(&no_empty)
            .iter()
            .any(|v| v.starts_with("I1")));
        let not_hereditary = SetFamily::from_masks(&u, [0, 0b011]);
        assert!(independence_axiom_violations(&not_hereditary)
            .iter()
            .any(|v| v.starts_with("I2")));
        let no_augment = SetFamily::from_masks(&u, [0, 0b001, 0b010, 0b100, 0b110]);
        assert!(independence_axiom_violations(&no_augment)
            .iter()
            .any(|v| v.starts_with("I3")));

        let with_empty = SetFamily::from_masks(&u, [0]);
        assert!(circuit_axiom_violations(&with_empty)
            .iter()
            .any(|v| v.starts_with("C1")));
        let nested = SetFamily::from_masks(&u, [0b001, 0b011]);
        assert!(circuit_axiom_violations(&nested)
            .iter()
            .any(|v| v.starts_with("C2")));
        let no_elim = SetFamily::from_masks(&u, [0b011, 0b110]);
        assert!(circuit_axiom_violations(&no_elim)
            .iter()
            .any(|v| v.starts_with("C3")));
        let triangle = SetFamily::from_masks(&u, [0b011, 0b110, 0b101]);
        assert!(circuit_axiom_violations(&triangle).is_empty());
    }

    #[test]
    fn random_bdms_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = random_binary_dependence(&mut rng, 4, 6);
            assert!(is_binary_dependence_literal(&a));
            assert!(is_binary_dependence(&a).unwrap().is_member());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig {
            max_n: Some(5),
            seed: 9,
            samples: Some(20),
        };
        let a = run(Theorem::T2, &cfg).unwrap();
        let b = run(Theorem::T2, &cfg).unwrap();
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.instances, 30);
        assert!(a.passed(), "{:?}", a.failures);
    }
}
