//! One line per acceptance criterion. Runs without the libtest harness so the
//! report reads top to bottom; the process fails if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use exkh::corpus::CorpusEntry;
use exkh::homology::cohomology;
use exkh::lando::{extreme_complex, lando_graph, smin_faces, x_complex, y_complex, DEFAULT_FACE_LIMIT};
use exkh::oracle::{
    graded_euler_characteristic, jmax, jmin, khovanov_complex, khovanov_homology, khovanov_table, q_grading,
    q_range_by_scan, smin_states, EnhancedState,
};
use exkh::resolution::State;
use exkh::verify::{compare_groups, diagonal_conjugacy, downward_closure_witness, jmax_from_y};
use exkh::{GradedAbelianGroup, LinkDiagram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CAP: usize = 20;
const LIMIT: usize = DEFAULT_FACE_LIMIT;

type Outcome = Result<String, String>;

/// First failing entry, or the number of entries checked.
fn every(entries: &[(CorpusEntry, LinkDiagram)], check: impl Fn(&LinkDiagram) -> Option<String> + Sync) -> Outcome {
    let failures: Vec<String> = entries
        .par_iter()
        .filter_map(|(e, d)| check(d).map(|w| format!("{}: {w}", e.name)))
        .collect();
    match failures.first() {
        None => Ok(format!("{} diagrams", entries.len())),
        Some(w) => Err(format!("{} of {} diagrams fail, first {w}", failures.len(), entries.len())),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = every(&small_corpus(), |d| {
        let cube = khovanov_homology(d, jmin(d), CAP).unwrap();
        let x = x_complex(d, LIMIT).unwrap().reduced_cohomology();
        // H̃^k(X_D) sits in Khovanov degree k - n_- + 1
        let graph = x.shifted(1 - d.n_minus() as i64);
        compare_groups("Kh", &cube, "X_D", &graph)
    })?;
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("{out} took {elapsed:.1?}, limit 60 s"));
    }
    Ok(format!("{out} in {elapsed:.1?}"))
}

fn criterion_2() -> Outcome {
    every(&small_corpus(), |d| {
        let zero = tracer_circles(d.pd().crossings(), d.unknotted_components(), &vec![false; d.n()]);
        let formula = d.n_plus() as i64 - 2 * d.n_minus() as i64 - zero as i64;
        let q0 = q_grading(d, &EnhancedState::all_minus(State::zero(d.n()), zero));
        let (scanned, _) = q_range_by_scan(d, CAP).unwrap();
        (formula != q0 || formula != scanned || formula != jmin(d))
            .then(|| format!("formula {formula}, q(0-) {q0}, scan {scanned}, jmin {}", jmin(d)))
    })
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut entries: Vec<(CorpusEntry, LinkDiagram)> = (0..200)
        .map(|t| {
            let d = random_diagram(&mut rng, 10);
            let e = CorpusEntry {
                name: format!("random #{t} {}", d.pd()),
                pd: d.pd().to_string(),
                expected: None,
            };
            (e, d)
        })
        .collect();
    entries.extend(small_corpus());
    every(&entries, |d| {
        let set = smin_states(d, CAP).unwrap();
        downward_closure_witness(&set).map(|(v, u)| format!("{v} in S_min but {u} is not"))
    })
}

fn criterion_4() -> Outcome {
    every(&small_corpus(), |d| {
        let faces = smin_faces(d, LIMIT).unwrap();
        let states = smin_states(d, CAP).unwrap();
        faces.symmetric_difference(&states).next().map(|v| format!("state {v} on one side only"))
    })
}

fn criterion_5() -> Outcome {
    every(&small_corpus(), |d| {
        let cube = khovanov_complex(d, jmin(d), CAP).unwrap();
        let graph = extreme_complex(d, LIMIT).unwrap();
        diagonal_conjugacy(&cube, &graph).err()
    })
}

fn criterion_6() -> Outcome {
    let entries = small_corpus();
    let derived = every(&entries, |d| {
        let cube = khovanov_homology(d, jmax(d), CAP).unwrap();
        compare_groups("Kh", &cube, "Y_D", &jmax_from_y(d, LIMIT).unwrap())
    });
    println!(
        "  info: with the shift i - n_+ + N - 2 (N = vertices of Y_D): {}",
        match &derived {
            Ok(s) => format!("holds on {s}"),
            Err(w) => format!("fails, {w}"),
        }
    );
    every(&entries, |d| {
        let cube = khovanov_homology(d, jmax(d), CAP).unwrap();
        let y = y_complex(d, LIMIT).unwrap().reduced_cohomology();
        // Kh^i against H̃^{i - n_+ + 1}(Y_D)
        let stated = y.shifted(d.n_plus() as i64 - 1);
        compare_groups("Kh", &cube, "Y_D", &stated)
    })
}

fn criterion_7() -> Outcome {
    every(&small_corpus(), |d| {
        let table = khovanov_table(d, CAP).unwrap();
        let chi = graded_euler_characteristic(&table);
        let jones = tracer_jones(d);
        (chi != jones).then(|| format!("Euler characteristic {chi}, Jones {jones}"))
    })
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    fn expect(failures: &mut Vec<String>, what: &str, got: GradedAbelianGroup, want: GradedAbelianGroup) {
        if got != want {
            failures.push(format!("{what}: got {got}, want {want}"));
        }
    }

    let trefoil: LinkDiagram = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]".parse().unwrap();
    if jmin(&trefoil) != -9 {
        failures.push(format!("left trefoil jmin {}", jmin(&trefoil)));
    }
    let cube = khovanov_homology(&trefoil, -9, CAP).unwrap();
    expect(&mut failures, "Kh^{*,-9}(3_1) cube", cube, GradedAbelianGroup::z_at(-3));
    expect(
        &mut failures,
        "Kh^{*,-9}(3_1) graph",
        cohomology(&extreme_complex(&trefoil, LIMIT).unwrap()).unwrap(),
        GradedAbelianGroup::z_at(-3),
    );

    let unknot: LinkDiagram = "O:1".parse().unwrap();
    let table = khovanov_table(&unknot, CAP).unwrap();
    let gradings: BTreeSet<i64> = table.keys().copied().collect();
    if gradings != [-1, 1].into() {
        failures.push(format!("unknot nonzero gradings {gradings:?}"));
    }
    for j in [-1, 1] {
        let kh = table.get(&j).cloned().unwrap_or_default();
        expect(&mut failures, &format!("Kh^{{*,{j}}}(O)"), kh, GradedAbelianGroup::z_at(0));
    }

    // the kink whose 0-resolution has one circle and one self-chord
    let kink: LinkDiagram = "X[1,2,2,1]".parse().unwrap();
    let x = x_complex(&kink, LIMIT).unwrap();
    if x.faces() != [vec![], vec![0]] {
        failures.push(format!("kink X_D has faces {:?}, want a point", x.faces()));
    }
    let graph = cohomology(&extreme_complex(&kink, LIMIT).unwrap()).unwrap();
    expect(&mut failures, "kink extreme, graph", graph, GradedAbelianGroup::zero());
    let cube = khovanov_homology(&kink, jmin(&kink), CAP).unwrap();
    expect(&mut failures, "kink extreme, cube", cube, GradedAbelianGroup::zero());

    match failures.first() {
        None => Ok("trefoil, unknot and kink".into()),
        Some(w) => Err(w.clone()),
    }
}

fn criterion_9() -> Outcome {
    let exkh = env!("CARGO_BIN_EXE_exkh");
    let mut done = Vec::new();
    for name in ["torus_2_35", "twisted_38"] {
        let entry = exkh::corpus::bundled_entry(name).ok_or(format!("{name} missing from the corpus"))?;
        let d = entry.diagram().unwrap();
        let vertices = lando_graph(&d).vertices.len();
        if d.n() < 35 || vertices > 12 {
            return Err(format!("{name}: {} crossings, {vertices} Lando vertices", d.n()));
        }
        let start = Instant::now();
        let run = Command::new(exkh)
            .args(["homology", "-i", name, "--grading", "min"])
            .env_remove("EXKH_CUBE_CAP")
            .output()
            .unwrap();
        let elapsed = start.elapsed();
        if run.status.code() != Some(0) || elapsed >= Duration::from_secs(5) {
            return Err(format!("{name}: exit {:?} after {elapsed:.1?}", run.status.code()));
        }
        let refused = Command::new(exkh)
            .args(["homology", "-i", name, "--grading", "min", "--oracle"])
            .env_remove("EXKH_CUBE_CAP")
            .output()
            .unwrap();
        if refused.status.code() != Some(3) {
            return Err(format!("{name} --oracle: exit {:?}, want 3", refused.status.code()));
        }
        done.push(format!("{name} ({} crossings, {vertices} Lando vertices) in {elapsed:.2?}", d.n()));
    }
    Ok(done.join(", "))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut entries = small_corpus();
    for t in 0..50 {
        let d = random_diagram(&mut rng, 8);
        let name = format!("random #{t}");
        entries.push((CorpusEntry { name, pd: d.pd().to_string(), expected: None }, d));
    }
    every(&entries, |d| {
        let (lo, hi) = q_range_by_scan(d, CAP).unwrap();
        let mut j = lo;
        while j <= hi {
            if let Err(e) = khovanov_complex(d, j, CAP).and_then(|c| c.check_d_squared()) {
                return Some(format!("cube j = {j}: {e}"));
            }
            j += 2;
        }
        let simplicial = [
            ("X_D", x_complex(d, LIMIT).unwrap().cochain_complex(-1, 0)),
            ("Y_D", y_complex(d, LIMIT).unwrap().cochain_complex(-1, 0)),
            ("extreme", extreme_complex(d, LIMIT).unwrap()),
        ];
        simplicial
            .iter()
            .find_map(|(what, c)| c.check_d_squared().err().map(|e| format!("{what}: {e}")))
    })
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("extreme equivalence at jmin", criterion_1),
        ("jmin formula", criterion_2),
        ("downward closure", criterion_3),
        ("face poset", criterion_4),
        ("diagonal conjugacy", criterion_5),
        ("jmax duality, shift i - n_+ + 1", criterion_6),
        ("Euler characteristic is Jones", criterion_7),
        ("spot values", criterion_8),
        ("extreme pipeline at 35+ crossings", criterion_9),
        ("d^2 = 0", criterion_10),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail} [{secs:.1}s]", k + 1),
            Err(witness) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {witness} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
