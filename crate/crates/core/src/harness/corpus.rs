//! Built-in corpus and the in-process acceptance suite run by `selftest`.

use serde::Serialize;

use super::{run_all, HarnessConfig, TheoremReport, Verdict};
use crate::error::Result;
use crate::generators::{kronecker, nakayama, rad_square_zero, trunc_poly, witt_lie};
use crate::hh1::{hh1, hh1_generic};
use crate::lie::Recognition;
use crate::linalg::{Field, Subspace};
use crate::quiver::{parse_presentation, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub text: String,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, text: impl Into<String>) -> CorpusEntry {
        CorpusEntry {
            name: name.into(),
            text: text.into(),
        }
    }

    pub fn presentation(&self) -> Result<Presentation> {
        parse_presentation(&self.text)
    }
}

pub const NAKAYAMA_PARAMS: [(usize, usize); 4] = [(2, 3), (3, 5), (4, 9), (2, 7)];
pub const RAD_SQUARE_ZERO_DIGRAPHS: [(&str, &[(usize, usize)]); 4] = [
    ("A2", &[(0, 1)]),
    ("triangle", &[(0, 1), (1, 2), (2, 0)]),
    ("4-cycle", &[(0, 1), (1, 2), (2, 3), (3, 0)]),
    ("3-out-star", &[(0, 1), (0, 2), (0, 3)]),
];

fn field_name(field: Field) -> String {
    field.to_string()
}

/// Every algebra the selftest runs the harness on, in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    let q = Field::Rational;
    let f5 = Field::Prime(5);
    let mut out = Vec::new();
    for field in [q, Field::Prime(2), Field::Prime(3)] {
        out.push(CorpusEntry::new(
            format!("kronecker/{}", field_name(field)),
            kronecker(field),
        ));
    }
    for n in [2, 3, 4, 6] {
        out.push(CorpusEntry::new(
            format!("trunc-poly-{n}/Q"),
            trunc_poly(q, n).unwrap(),
        ));
    }
    for p in [3u64, 5, 7] {
        let field = Field::Prime(p);
        out.push(CorpusEntry::new(
            format!("trunc-poly-{p}/F{p}"),
            trunc_poly(field, p as usize).unwrap(),
        ));
    }
    for (name, edges) in RAD_SQUARE_ZERO_DIGRAPHS {
        out.push(CorpusEntry::new(
            format!("rad-sq-zero-{name}/Q"),
            rad_square_zero(q, edges).unwrap(),
        ));
    }
    for field in [q, f5] {
        for (e, l) in NAKAYAMA_PARAMS {
            out.push(CorpusEntry::new(
                format!("nakayama-{e}-{l}/{}", field_name(field)),
                nakayama(field, e, l).unwrap(),
            ));
        }
    }
    out.push(CorpusEntry::new(
        "semisimple/Q",
        "# two simple modules, no arrows\nfield Q\nvertices 2\ntruncate 2\n",
    ));
    out.push(CorpusEntry::new(
        "path-A3/Q",
        "# path algebra of 0 -> 1 -> 2\nfield Q\nvertices 3\narrow a 0 1\narrow b 1 2\ntruncate 3\n",
    ));
    out.push(CorpusEntry::new(
        "commutative-square/Q",
        "# commutative square\nfield Q\nvertices 4\narrow a 0 1\narrow b 1 3\narrow c 0 2\narrow d 2 3\ntruncate 3\nrel 1 a*b -1 c*d\n",
    ));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub hash: String,
    pub dim: usize,
    pub hh1_dim: usize,
    pub verdict: Verdict,
    /// `(check id, applicable, verdict)`.
    pub checks: Vec<(String, bool, Verdict)>,
}

impl EntryResult {
    fn from_report(name: &str, report: &TheoremReport) -> EntryResult {
        EntryResult {
            name: name.to_string(),
            hash: report.algebra.hash.clone(),
            dim: report.algebra.dim,
            hh1_dim: report.algebra.hh1_dim,
            verdict: report.verdict(),
            checks: report
                .checks
                .iter()
                .map(|c| (c.id.clone(), c.applicable, c.verdict))
                .collect(),
        }
    }

    fn check(&self, id: &str) -> Option<(bool, Verdict)> {
        self.checks.iter().find(|c| c.0 == id).map(|c| (c.1, c.2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub entries: Vec<EntryResult>,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One line per criterion.
    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            out.push_str(&format!(
                "{:>2}  {:<4}  {:<28}  {}\n",
                c.id,
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        let fails = self
            .entries
            .iter()
            .filter(|e| e.verdict == Verdict::Fail)
            .count();
        let warns = self
            .entries
            .iter()
            .filter(|e| e.verdict == Verdict::Warn)
            .count();
        out.push_str(&format!(
            "corpus: {} algebras, {fails} failing, {warns} with warnings\n",
            self.entries.len()
        ));
        out
    }
}

/// Outcome of one criterion: `Ok(detail)` on success, `Err(reason)` otherwise.
type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn build(text: &str) -> std::result::Result<crate::quiver::FdAlgebra, String> {
    parse_presentation(text)
        .and_then(|p| p.build())
        .map_err(|e| e.to_string())
}

fn kronecker_rational(seed: u64) -> Outcome {
    let h = hh1(&build(&kronecker(Field::Rational))?).map_err(|e| e.to_string())?;
    ensure(h.dim() == 3, format!("dim HH^1 = {}", h.dim()))?;
    match h.lie().recognize_sl2(seed) {
        Recognition::Yes(b) => ensure(h.lie().satisfies_sl2(&b), "sl2-triple does not verify")?,
        other => return Err(format!("recognize_sl2 = {}", other.verdict())),
    }
    ensure(
        h.lie().is_simple_probe(seed, 64).is_probably_simple(),
        "simplicity probe found a proper ideal",
    )?;
    Ok("dim 3, sl2".into())
}

fn kronecker_char2() -> Outcome {
    let h = hh1(&build(&kronecker(Field::Prime(2)))?).map_err(|e| e.to_string())?;
    ensure(h.lie().series_report().solvable, "HH^1 not solvable")?;
    Ok(format!("dim {}, solvable", h.dim()))
}

fn witt_truncated(seed: u64) -> Outcome {
    for p in [3u64, 5, 7] {
        let field = Field::Prime(p);
        let h = hh1(&build(&trunc_poly(field, p as usize).unwrap())?).map_err(|e| e.to_string())?;
        ensure(
            h.dim() == p as usize,
            format!("p = {p}: dim HH^1 = {}", h.dim()),
        )?;
        match h.lie().recognize_witt(seed).map_err(|e| e.to_string())? {
            Recognition::Yes(b) => ensure(
                h.lie().satisfies_witt(&b),
                format!("p = {p}: Witt basis does not verify"),
            )?,
            other => return Err(format!("p = {p}: recognize_witt = {}", other.verdict())),
        }
        if p == 3 {
            ensure(
                h.lie().recognize_sl2(seed).is_yes(),
                "p = 3: recognize_sl2 is not yes",
            )?;
        }
    }
    Ok("p = 3, 5, 7".into())
}

fn witt_embedding(seed: u64) -> Outcome {
    let w = witt_lie(5).map_err(|e| e.to_string())?;
    let span = Subspace::span(w.field(), w.dim(), (0..3).map(|i| w.basis_vector(i)));
    let sub = w.restrict(&span).map_err(|e| e.to_string())?;
    match sub.recognize_sl2(seed) {
        Recognition::Yes(b) => ensure(sub.satisfies_sl2(&b), "sl2-triple does not verify")?,
        other => return Err(format!("recognize_sl2 = {}", other.verdict())),
    }
    Ok("span{f-1, f0, f1} is sl2".into())
}

fn truncated_rational() -> Outcome {
    for n in [2, 3, 4, 6] {
        let a = build(&trunc_poly(Field::Rational, n).unwrap())?;
        let h = hh1(&a).map_err(|e| e.to_string())?;
        let g = hh1_generic(&a).map_err(|e| e.to_string())?;
        ensure(h.dim() == n - 1, format!("n = {n}: dim HH^1 = {}", h.dim()))?;
        ensure(
            g.dim() == n - 1,
            format!("n = {n}: generic dim = {}", g.dim()),
        )?;
        ensure(
            h.lie().series_report().solvable,
            format!("n = {n}: not solvable"),
        )?;
    }
    Ok("n = 2, 3, 4, 6".into())
}

fn radical_square_zero() -> Outcome {
    for (name, edges) in RAD_SQUARE_ZERO_DIGRAPHS {
        let a = build(&rad_square_zero(Field::Rational, edges).unwrap())?;
        let h = hh1(&a).map_err(|e| e.to_string())?;
        let g = hh1_generic(&a).map_err(|e| e.to_string())?;
        let expected = edges.len() as i64 - a.num_vertices() as i64 + 1;
        ensure(
            h.dim() as i64 == expected,
            format!("{name}: dim {} vs {expected}", h.dim()),
        )?;
        ensure(
            g.dim() == h.dim(),
            format!("{name}: generic dim {}", g.dim()),
        )?;
        ensure(h.lie().is_abelian(), format!("{name}: not abelian"))?;
    }
    Ok("A2, triangle, 4-cycle, star".into())
}

fn nakayama_family(entries: &[EntryResult]) -> Outcome {
    for field in [Field::Rational, Field::Prime(5)] {
        for (e, l) in NAKAYAMA_PARAMS {
            let name = format!("nakayama-{e}-{l}/{}", field_name(field));
            let entry = entries
                .iter()
                .find(|x| x.name == name)
                .ok_or_else(|| format!("{name} missing"))?;
            ensure(
                entry.verdict != Verdict::Fail,
                format!("{name}: harness fails"),
            )?;
            ensure(
                entry.check("simple_digraph") == Some((true, Verdict::Pass)),
                format!("{name}: solvability bounds not certified"),
            )?;
            let a = build(&nakayama(field, e, l).unwrap())?;
            let ext = a.ext1_matrix();
            ensure(
                (0..e).all(|i| ext[i][i] == 0),
                format!("{name}: loop in Ext-quiver"),
            )?;
        }
    }
    Ok("8 algebras".into())
}

/// Every corpus entry has `id` applicable-or-vacuous with no failure.
fn per_check(entries: &[EntryResult], ids: &[&str]) -> Outcome {
    for entry in entries {
        for id in ids {
            match entry.check(id) {
                None => return Err(format!("{}: {id} missing", entry.name)),
                Some((_, Verdict::Fail)) => return Err(format!("{}: {id} fails", entry.name)),
                _ => {}
            }
        }
    }
    Ok(format!("{} algebras", entries.len()))
}

fn oracle(entries: &[EntryResult]) -> Outcome {
    per_check(entries, &["oracle_equivalence"])?;
    let covered = entries
        .iter()
        .filter(|e| e.check("oracle_equivalence").is_some_and(|c| c.0))
        .count();
    let small = entries
        .iter()
        .filter(|e| e.dim <= super::checks::GENERIC_ORACLE_MAX_DIM)
        .count();
    ensure(
        covered == small,
        format!("{covered} of {small} small algebras compared"),
    )?;
    Ok(format!("{covered} algebras of dimension at most 30"))
}

fn validation(entries: &[EntryResult]) -> Outcome {
    for entry in entries {
        ensure(
            entry.check("lie_validation") == Some((true, Verdict::Pass)),
            format!("{}: validation fails", entry.name),
        )?;
    }
    let w = witt_lie(7).map_err(|e| e.to_string())?;
    crate::lie::LieSC::new(w.field(), w.dim(), w.structure_constants().to_vec())
        .map_err(|e| e.to_string())?;
    Ok(format!("{} tensors", entries.len() + 1))
}

fn record(id: usize, name: &str, outcome: Outcome) -> CriterionResult {
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Runs the harness on the whole corpus, then the acceptance criteria that
/// can be decided in one process.
pub fn selftest(seed: u64) -> Result<SelftestReport> {
    let config = HarnessConfig::with_seed(seed);
    let mut entries = Vec::new();
    for entry in corpus() {
        let report = run_all(&entry.presentation()?, config)?;
        entries.push(EntryResult::from_report(&entry.name, &report));
    }
    let criteria = vec![
        record(1, "kronecker over Q", kronecker_rational(seed)),
        record(2, "kronecker over F2", kronecker_char2()),
        record(3, "truncated polynomials mod p", witt_truncated(seed)),
        record(4, "witt sl2 embedding", witt_embedding(seed)),
        record(5, "truncated polynomials over Q", truncated_rational()),
        record(6, "radical square zero", radical_square_zero()),
        record(7, "nakayama family", nakayama_family(&entries)),
        record(8, "filtration", per_check(&entries, &["filtration"])),
        record(9, "oracle equivalence", oracle(&entries)),
        record(10, "lie validation", validation(&entries)),
        record(
            11,
            "schur maps",
            per_check(&entries, &["schur_maps", "filtration"]),
        ),
    ];
    let passed =
        criteria.iter().all(|c| c.passed) && entries.iter().all(|e| e.verdict != Verdict::Fail);
    Ok(SelftestReport {
        seed,
        entries,
        criteria,
        passed,
    })
}
