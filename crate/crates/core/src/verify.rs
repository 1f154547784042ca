//! Machine checks comparing the cube-based and graph-based pipelines.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::complex::BigradedComplex;
use crate::corpus::CorpusEntry;
use crate::error::Result;
use crate::homology::{cohomology, GradedAbelianGroup};
use crate::lando::{extreme_complex, x_complex, y_complex, DEFAULT_FACE_LIMIT};
use crate::oracle::{jmax, jmin, khovanov_complex_with, smin_states_with, EnhancedState};
use crate::pd::LinkDiagram;
use crate::resolution::{Resolver, State, DEFAULT_CUBE_CAP};

/// Appended to every report.
pub const FOOTER: &str = "homotopy equivalences are certified here only through integral cohomology";

pub const EXTREME_MIN: &str = "extreme_min";
pub const EXTREME_MAX: &str = "extreme_max";
pub const DOWNWARD_CLOSURE: &str = "downward_closure";
pub const FACE_POSET: &str = "face_poset";
pub const MATRIX_CONJUGACY: &str = "matrix_conjugacy";
pub const FROZEN_VALUES: &str = "frozen_values";

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub cube_cap: usize,
    pub face_limit: usize,
    /// Crossings whose smoothing rule is swapped on the cube side only.
    pub inject_fault: Vec<usize>,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cube_cap: DEFAULT_CUBE_CAP,
            face_limit: DEFAULT_FACE_LIMIT,
            inject_fault: Vec::new(),
            timings: false,
        }
    }
}

impl VerifyOptions {
    fn resolver<'a>(&self, d: &'a LinkDiagram) -> Resolver<'a> {
        Resolver::new(d).with_flipped(&self.inject_fault)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub n: usize,
    pub jmin: i64,
    pub jmax: i64,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub footer: &'static str,
}

impl VerificationReport {
    fn new(id: &str, d: &LinkDiagram) -> Self {
        VerificationReport {
            id: id.to_string(),
            n: d.n(),
            jmin: jmin(d),
            jmax: jmax(d),
            pass: true,
            checks: Vec::new(),
            notes: Vec::new(),
            footer: FOOTER,
        }
    }

    fn record(&mut self, name: &str, opts: &VerifyOptions, f: impl FnOnce() -> Result<Option<String>>) -> Result<()> {
        let start = Instant::now();
        let witness = f()?;
        let pass = witness.is_none();
        self.pass &= pass;
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            witness,
            micros: opts.timings.then(|| start.elapsed().as_micros() as u64),
        });
        Ok(())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First failing check, in execution order.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}  n={} jmin={} jmax={}", self.id, self.n, self.jmin, self.jmax).unwrap();
        for c in &self.checks {
            write!(out, "  {:<18} {}", c.name, if c.pass { "PASS" } else { "FAIL" }).unwrap();
            if let Some(us) = c.micros {
                write!(out, "  {us}us").unwrap();
            }
            if let Some(w) = &c.witness {
                write!(out, "  {w}").unwrap();
            }
            out.push('\n');
        }
        for note in &self.notes {
            writeln!(out, "  note: {note}").unwrap();
        }
        writeln!(out, "  ({FOOTER})").unwrap();
        out
    }
}

/// First degree where the two graded groups differ, formatted as a witness.
pub fn compare_groups(left_name: &str, left: &GradedAbelianGroup, right_name: &str, right: &GradedAbelianGroup) -> Option<String> {
    left.first_difference(right)
        .map(|i| format!("degree {i}: {left_name} {} vs {right_name} {}", left.get(i), right.get(i)))
}

/// `H̃^*(Y_D)` moved to Khovanov degrees: `H̃^k(Y_D)` lands in degree
/// `k + n_+ - N + 2`, where `N` is the number of Lando vertices of the mirror.
pub fn jmax_from_y(d: &LinkDiagram, face_limit: usize) -> Result<GradedAbelianGroup> {
    let y = y_complex(d, face_limit)?;
    let shift = d.n_plus() as i64 - y.vertices().len() as i64 + 2;
    Ok(y.reduced_cohomology().shifted(shift))
}

/// `Kh^{*, jmin}` from the cube against the cohomology of `X_D`.
pub fn verify_extreme(id: &str, d: &LinkDiagram, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(id, d);
    let resolver = opts.resolver(d);
    report.record(EXTREME_MIN, opts, || {
        let graph_side = cohomology(&extreme_complex(d, opts.face_limit)?)?;
        let cube_side = cohomology(&khovanov_complex_with(&resolver, jmin(d), opts.cube_cap)?)?;
        Ok(compare_groups("cube", &cube_side, "X_D", &graph_side))
    })?;
    Ok(report)
}

/// `Kh^{*, jmax}` from the cube against the cohomology of `Y_D`.
pub fn verify_jmax(id: &str, d: &LinkDiagram, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(id, d);
    let resolver = opts.resolver(d);
    report.record(EXTREME_MAX, opts, || {
        let graph_side = jmax_from_y(d, opts.face_limit)?;
        let cube_side = cohomology(&khovanov_complex_with(&resolver, jmax(d), opts.cube_cap)?)?;
        Ok(compare_groups("cube", &cube_side, "Y_D", &graph_side))
    })?;
    Ok(report)
}

/// Downward closure of `S_min'`, its identification with the faces of `X_D`,
/// and the matrix-level match of the two extreme complexes.
pub fn verify_structure(id: &str, d: &LinkDiagram, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(id, d);
    let resolver = opts.resolver(d);
    let states = smin_states_with(&resolver, opts.cube_cap)?;
    report.record(DOWNWARD_CLOSURE, opts, || {
        Ok(downward_closure_witness(&states).map(|(v, u)| format!("state {v} present but {u} missing")))
    })?;
    report.record(FACE_POSET, opts, || {
        let x = x_complex(d, opts.face_limit)?;
        let faces: BTreeSet<State> = x.faces().iter().map(|f| State::from_support(f, d.n())).collect();
        Ok(states.symmetric_difference(&faces).next().map(|v| {
            let side = if states.contains(v) { "cube" } else { "X_D" };
            format!("state {v} only on the {side} side")
        }))
    })?;
    report.record(MATRIX_CONJUGACY, opts, || {
        let cube = khovanov_complex_with(&resolver, jmin(d), opts.cube_cap)?;
        let graph = extreme_complex(d, opts.face_limit)?;
        Ok(diagonal_conjugacy(&cube, &graph).err())
    })?;
    Ok(report)
}

/// All three suites merged into one report.
pub fn verify_all(id: &str, d: &LinkDiagram, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = verify_extreme(id, d, opts)?;
    report.merge(verify_jmax(id, d, opts)?);
    report.merge(verify_structure(id, d, opts)?);
    Ok(report)
}

/// Every suite the cube cap allows, plus a comparison with the values frozen
/// in the entry. Above the cap only the graph side runs.
pub fn verify_entry(entry: &CorpusEntry, opts: &VerifyOptions) -> Result<VerificationReport> {
    let d = entry.diagram()?;
    let mut report = if d.n() <= opts.cube_cap {
        verify_all(&entry.name, &d, opts)?
    } else {
        let mut r = VerificationReport::new(&entry.name, &d);
        r.notes.push(format!(
            "cube checks skipped: {} crossings exceeds the cube cap of {}",
            d.n(),
            opts.cube_cap
        ));
        r
    };
    if let Some(expected) = &entry.expected {
        report.record(FROZEN_VALUES, opts, || {
            if expected.jmin != jmin(&d) || expected.jmax != jmax(&d) {
                return Ok(Some(format!(
                    "extreme gradings ({}, {}) vs frozen ({}, {})",
                    jmin(&d),
                    jmax(&d),
                    expected.jmin,
                    expected.jmax
                )));
            }
            let kh_min = cohomology(&extreme_complex(&d, opts.face_limit)?)?;
            if let Some(w) = compare_groups("computed jmin", &kh_min, "frozen", &expected.kh_min) {
                return Ok(Some(w));
            }
            if let Some(frozen) = &expected.kh_max {
                let kh_max = jmax_from_y(&d, opts.face_limit)?;
                return Ok(compare_groups("computed jmax", &kh_max, "frozen", frozen));
            }
            Ok(None)
        })?;
    }
    Ok(report)
}

/// A state of `set` with a lower neighbour outside it, smallest first.
pub fn downward_closure_witness(set: &BTreeSet<State>) -> Option<(State, State)> {
    set.iter().find_map(|v| {
        v.support()
            .into_iter()
            .map(|k| v.with(k, false))
            .find(|u| !set.contains(u))
            .map(|u| (v.clone(), u))
    })
}

/// Signs `ε` with `graph_d = ε · cube_d · ε` in every degree, after matching
/// cube generators `(v, x_-)` with faces `supp(v)`. `Ok(true)` when every sign
/// is `+1`; on failure the witness names the first offending degree.
pub fn diagonal_conjugacy(
    cube: &BigradedComplex<EnhancedState>,
    graph: &BigradedComplex<Vec<usize>>,
) -> std::result::Result<bool, String> {
    let degrees: BTreeSet<i64> = cube.support().into_iter().chain(graph.support()).collect();
    // position of each cube generator in the graph basis
    let mut perm: HashMap<i64, Vec<usize>> = HashMap::new();
    for &i in &degrees {
        let index: HashMap<&[usize], usize> = graph
            .generators(i)
            .iter()
            .enumerate()
            .map(|(t, f)| (f.as_slice(), t))
            .collect();
        if cube.rank(i) != graph.rank(i) {
            return Err(format!("degree {i}: {} cube generators vs {} faces", cube.rank(i), graph.rank(i)));
        }
        let mut p = Vec::with_capacity(cube.rank(i));
        for g in cube.generators(i) {
            if !g.is_all_minus() {
                return Err(format!("degree {i}: generator {g} is not all-minus"));
            }
            match index.get(g.state.support().as_slice()) {
                Some(&t) => p.push(t),
                None => return Err(format!("degree {i}: state {} has no matching face", g.state)),
            }
        }
        perm.insert(i, p);
    }

    // ratio constraints eps(i+1, r) * eps(i, c) = graph / cube
    let mut adjacency: HashMap<(i64, usize), Vec<((i64, usize), i64)>> = HashMap::new();
    for &i in &degrees {
        let a = cube.differential(i);
        let b = graph.differential(i);
        if a.nnz() != b.nnz() {
            return Err(format!("degree {i}: {} nonzero entries vs {}", a.nnz(), b.nnz()));
        }
        if a.nnz() == 0 {
            continue;
        }
        let (rows, cols) = (&perm[&(i + 1)], &perm[&i]);
        for (r, c, v) in a.entries() {
            let w = b.get(rows[r], cols[c]);
            if w.abs() != v.abs() {
                return Err(format!("degree {i}: entry ({r},{c}) is {v} on the cube side, {w} on the face side"));
            }
            let ratio = w / v;
            let (x, y) = ((i + 1, rows[r]), (i, cols[c]));
            adjacency.entry(x).or_default().push((y, ratio));
            adjacency.entry(y).or_default().push((x, ratio));
        }
    }

    let mut sign: HashMap<(i64, usize), i64> = HashMap::new();
    let mut keys: Vec<_> = adjacency.keys().copied().collect();
    keys.sort_unstable();
    for start in keys {
        if sign.contains_key(&start) {
            continue;
        }
        sign.insert(start, 1);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let sx = sign[&x];
            for &(y, ratio) in &adjacency[&x] {
                match sign.get(&y) {
                    Some(&sy) if sy != sx * ratio => {
                        return Err(format!("degree {}: no consistent sign for generator {}", y.0, y.1));
                    }
                    Some(_) => {}
                    None => {
                        sign.insert(y, sx * ratio);
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    Ok(adjacency.values().flatten().all(|&(_, r)| r == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::khovanov_complex;

    fn trefoil() -> LinkDiagram {
        "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]".parse().unwrap()
    }

    #[test]
    fn trefoil_passes_everything() {
        let r = verify_all("3_1", &trefoil(), &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{}", r.to_table());
        assert_eq!(r.checks.len(), 5);
        assert_eq!((r.jmin, r.jmax), (-9, -1));
        assert_eq!(r.footer, FOOTER);
    }

    #[test]
    fn unknots_and_kinks() {
        for pd in ["O:1", "O:2", "X[1,1,2,2]", "X[2,1,1,2]", "X[1,2,2,1]", "O:1;X[1,1,2,2]"] {
            let d: LinkDiagram = pd.parse().unwrap();
            let r = verify_all(pd, &d, &VerifyOptions::default()).unwrap();
            assert!(r.pass, "{}", r.to_table());
        }
    }

    #[test]
    fn injected_fault_is_caught() {
        let d = trefoil();
        let opts = VerifyOptions {
            inject_fault: vec![1],
            ..Default::default()
        };
        let r = verify_structure("3_1", &d, &opts).unwrap();
        assert!(!r.pass);
        let c = r.check(FACE_POSET).unwrap();
        assert!(!c.pass);
        assert!(c.witness.as_deref().unwrap().starts_with("state "));
    }

    #[test]
    fn trefoil_conjugacy_is_vacuous() {
        let d = trefoil();
        let cube = khovanov_complex(&d, jmin(&d), 20).unwrap();
        let graph = extreme_complex(&d, 100).unwrap();
        assert_eq!(diagonal_conjugacy(&cube, &graph), Ok(true));
    }

    #[test]
    fn witnesses() {
        let set: BTreeSet<State> = [State::zero(2), State::ones(2)].into();
        let (v, u) = downward_closure_witness(&set).unwrap();
        assert_eq!((v.to_string(), u.to_string()), ("11".to_string(), "01".to_string()));
        let a = GradedAbelianGroup::z_at(0);
        let b = GradedAbelianGroup::z_at(1);
        assert_eq!(compare_groups("a", &a, "b", &b).unwrap(), "degree 0: a Z vs b 0");
    }

    #[test]
    fn timings_are_optional() {
        let d = trefoil();
        let r = verify_extreme("t", &d, &VerifyOptions::default()).unwrap();
        assert!(r.checks[0].micros.is_none());
        assert!(!r.to_json().to_string().contains("micros"));
        let opts = VerifyOptions {
            timings: true,
            ..Default::default()
        };
        let r = verify_extreme("t", &d, &opts).unwrap();
        assert!(r.checks[0].micros.is_some());
    }
}
