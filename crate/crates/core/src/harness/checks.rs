use serde_json::json;

use super::{CheckRecord, Context};
use crate::error::Result;
use crate::hh1::{
    d_filtration, hh1_filtration_image, hh1_generic, schur_map, truncation_map, SchurMap,
};
use crate::lie::{Recognition, SimplicityProbe};
use crate::linalg::{Matrix, Subspace};
use crate::quiver::SymmetryDecision;

pub const CHECK_IDS: [&str; 8] = [
    "simple_digraph",
    "two_parallel",
    "loop_theorem",
    "filtration",
    "dimension_formula",
    "oracle_equivalence",
    "lie_validation",
    "schur_maps",
];

/// Largest algebra dimension on which the brute-force solver is run.
pub const GENERIC_ORACLE_MAX_DIM: usize = 30;

pub(super) fn run(ctx: &Context) -> Result<Vec<CheckRecord>> {
    let schur: Vec<std::result::Result<SchurMap, String>> = (0..ctx.algebra.num_vertices())
        .map(|i| schur_map(&ctx.hh1, &[i]).map_err(|e| e.to_string()))
        .collect();
    Ok(vec![
        simple_digraph(ctx),
        two_parallel(ctx),
        loop_theorem(ctx),
        filtration(ctx, &schur)?,
        dimension_formula(ctx),
        oracle_equivalence(ctx)?,
        lie_validation(ctx),
        schur_maps(ctx, &schur)?,
    ])
}

fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

fn has_loops(ctx: &Context) -> bool {
    ctx.class.has_loops
}

fn simple_digraph(ctx: &Context) -> CheckRecord {
    let id = "simple_digraph";
    if !ctx.class.is_simple_digraph {
        return CheckRecord::not_applicable(id, "Ext-quiver has loops or parallel arrows");
    }
    let mut r = CheckRecord::new(id);
    let ll = ctx.algebra.loewy_length() as i64;
    let s = &ctx.series;
    r.measure("loewy_length", ll);
    r.measure("solvable", s.solvable);
    r.measure("derived_length", json!(s.derived_length));
    r.measure(
        "nilpotency_class_of_derived",
        json!(s.nilpotency_class_of_derived),
    );
    r.expect("solvable", true);
    r.require(s.solvable, "HH^1 is solvable");
    let derived_bound = if ll <= 2 {
        1
    } else {
        floor_log2((ll - 1) as usize) as i64 + 1
    } - ctx.shift();
    r.expect("derived_length_at_most", derived_bound);
    r.require(
        s.derived_length.is_some_and(|d| d as i64 <= derived_bound),
        format!("derived length at most {derived_bound}"),
    );
    if ll > 2 {
        let class_bound = ll - 2 - ctx.shift();
        r.expect("nilpotency_class_of_derived_at_most", class_bound);
        r.require(
            s.nilpotency_class_of_derived
                .is_some_and(|c| c as i64 <= class_bound),
            format!("derived subalgebra nilpotent of class at most {class_bound}"),
        );
    }
    r
}

fn two_parallel(ctx: &Context) -> CheckRecord {
    let id = "two_parallel";
    if has_loops(ctx) || ctx.class.max_parallel > 2 {
        return CheckRecord::not_applicable(
            id,
            "Ext-quiver has loops or more than two parallel arrows",
        );
    }
    let mut r = CheckRecord::new(id);
    let lie = ctx.hh1.lie();
    let p = ctx.algebra.field().characteristic();
    r.measure("solvable", ctx.series.solvable);
    r.measure("characteristic", p);
    if p == 2 {
        r.expect("solvable", true);
        r.require(ctx.series.solvable, "HH^1 is solvable in characteristic 2");
        return r;
    }
    if ctx.series.solvable {
        r.notes.push("HH^1 is solvable".into());
        return r;
    }
    if p != 0 {
        let rec = lie.recognize_sl2(ctx.config.seed);
        r.measure("sl2", rec.verdict());
        match rec {
            Recognition::Yes(b) => r.require(lie.satisfies_sl2(&b), "exhibited sl2-triple"),
            _ => r.warn("non-solvable HH^1 in odd characteristic: the radical is not computed"),
        }
        return r;
    }
    let rad = match lie.radical_char0() {
        Ok(rad) => rad,
        Err(e) => {
            r.require(false, format!("radical computation failed: {e}"));
            return r;
        }
    };
    let (quotient, _) = match lie.quotient(&rad) {
        Ok(q) => q,
        Err(e) => {
            r.require(false, format!("quotient by the radical failed: {e}"));
            return r;
        }
    };
    let d = quotient.dim();
    r.measure("radical_dim", rad.dim());
    r.measure("semisimple_quotient_dim", d);
    r.expect("semisimple_quotient_dim_mod_3", 0);
    r.require(d % 3 == 0, "dimension of HH^1/rad is a multiple of 3");
    r.require(
        quotient.killing_form().rank() == d,
        "Killing form of HH^1/rad is nondegenerate",
    );
    let probe = lie.is_simple_probe(ctx.config.seed, ctx.config.trials);
    r.measure("simple_probe", probe_str(&probe));
    if d == 3 {
        let rec = quotient.recognize_sl2(ctx.config.seed);
        r.measure("sl2", rec.verdict());
        match rec {
            Recognition::Yes(b) => r.require(quotient.satisfies_sl2(&b), "exhibited sl2-triple"),
            Recognition::No(why) => r.require(false, format!("HH^1/rad is sl2: {why}")),
            Recognition::Inconclusive => r.warn("sl2 recognition inconclusive over this field"),
        }
    } else if d > 3 {
        r.notes.push(format!(
            "semisimple, dimension {d}, factor decomposition unchecked"
        ));
    }
    r
}

fn probe_str(p: &SimplicityProbe) -> &'static str {
    match p {
        SimplicityProbe::No { .. } => "no",
        SimplicityProbe::ProbablyYes => "probably_yes",
    }
}

/// `J(eAe)^2 = e J(A)^2 e` for the corner at vertex `i`, in `A`-coordinates.
fn corner_condition(ctx: &Context, i: usize) -> Result<bool> {
    let alg = &ctx.algebra;
    let corner = alg.corner(&[i])?;
    let field = alg.field();
    let lifted = Subspace::span(
        field,
        alg.dim(),
        corner.algebra.radical_power(2).basis().iter().map(|v| {
            let mut w = crate::linalg::vector::zeros(field, alg.dim());
            for (k, x) in v.iter().enumerate() {
                w[corner.inclusion[k]] = x.clone();
            }
            w
        }),
    );
    Ok(lifted == alg.sandwich_space(i, &alg.radical_power(2), i))
}

fn loop_theorem(ctx: &Context) -> CheckRecord {
    let id = "loop_theorem";
    let loop_vertices: Vec<usize> = (0..ctx.ext1.len())
        .filter(|&i| ctx.ext1[i][i] == 1)
        .collect();
    if loop_vertices.is_empty() {
        return CheckRecord::not_applicable(id, "no vertex with exactly one loop");
    }
    match &ctx.symmetric {
        SymmetryDecision::Yes { .. } => {}
        SymmetryDecision::No => return CheckRecord::not_applicable(id, "algebra is not symmetric"),
        SymmetryDecision::Inconclusive => {
            let mut r = CheckRecord::not_applicable(id, "symmetry undecided");
            r.warn("symmetric-form search inconclusive");
            return r;
        }
    }
    let vertex = loop_vertices
        .iter()
        .copied()
        .find(|&i| corner_condition(ctx, i).unwrap_or(false));
    let Some(vertex) = vertex else {
        return CheckRecord::not_applicable(id, "corner condition J(iAi)^2 = iJ^2i fails");
    };
    let mut r = CheckRecord::new(id);
    r.measure("vertex", vertex);
    let lie = ctx.hh1.lie();
    let probe = lie.is_simple_probe(ctx.config.seed, ctx.config.trials);
    r.measure("simple_probe", probe_str(&probe));
    if !probe.is_probably_simple() {
        r.notes.push("HH^1 is not simple".into());
        return r;
    }
    let p = ctx.algebra.field().characteristic();
    let sl2 = lie.recognize_sl2(ctx.config.seed);
    r.measure("sl2", sl2.verdict());
    if p == 0 {
        if sl2.is_yes() {
            r.require(
                false,
                "a simple HH^1 with a qualifying loop vertex forces positive characteristic",
            );
        } else {
            r.warn("HH^1 probably simple over Q but not certified");
        }
        return r;
    }
    if p == 2 {
        r.warn("probably simple HH^1 in characteristic 2");
        return r;
    }
    let witt = lie
        .recognize_witt(ctx.config.seed)
        .unwrap_or(Recognition::Inconclusive);
    r.measure("witt", witt.verdict());
    r.expect("sl2_or_witt", true);
    if !(sl2.is_yes() || witt.is_yes()) {
        r.warn("neither sl2 nor the Witt algebra was recognized");
    }
    r
}

fn filtration(
    ctx: &Context,
    schur: &[std::result::Result<SchurMap, String>],
) -> Result<CheckRecord> {
    let mut r = CheckRecord::new("filtration");
    let h = &ctx.hh1;
    let ll = ctx.algebra.loewy_length();
    let d: Vec<Subspace> = (1..=ll.max(1))
        .map(|m| d_filtration(h, m))
        .collect::<Result<_>>()?;
    let dm = |m: usize| &d[m - 1];
    r.measure("d_dims", d.iter().map(Subspace::dim).collect::<Vec<_>>());
    r.require(dm(ll.max(1)).is_zero() || ll == 0, format!("D_{ll} = 0"));

    let matrices: Vec<Vec<Matrix>> = d
        .iter()
        .map(|s| {
            s.basis()
                .iter()
                .map(|v| h.derivation_from_coords(v))
                .collect()
        })
        .collect();
    for m in 1..ll {
        for n in 1..ll {
            let target = m + n - 1;
            for x in &matrices[m - 1] {
                for y in &matrices[n - 1] {
                    let c = h.coords_of(&x.commutator(y));
                    let ok = if target >= ll {
                        crate::linalg::vector::is_zero(&c)
                    } else {
                        dm(target).contains(&c)
                    };
                    r.require(ok, format!("[D_{m}, D_{n}] inside D_{target}"));
                }
            }
        }
    }

    if has_loops(ctx) {
        r.notes
            .push("truncation map and corner filtration skipped: loops".into());
        return Ok(r);
    }
    match truncation_map(h) {
        Ok(t) => {
            r.measure("kernel_dim", t.kernel.dim());
            r.measure("d2_image_dim", t.d2_image.dim());
            r.require(t.kernel_is_d2_image(), "ker Phi equals the image of D_2");
            let lie = h.lie();
            r.require(lie.is_ideal(&t.kernel), "ker Phi is an ideal");
            let nilpotent = lie
                .restrict(&t.kernel)
                .map(|k| k.is_nilpotent())
                .unwrap_or(false);
            r.require(nilpotent, "ker Phi is nilpotent");
        }
        Err(e) => r.require(false, format!("truncation map: {e}")),
    }
    for (i, s) in schur.iter().enumerate() {
        match s {
            Ok(s) => {
                let image = Subspace::span(
                    s.target.field(),
                    s.target.dim(),
                    (0..s.matrix.cols()).map(|c| s.matrix.column(c)),
                );
                let f1 = hh1_filtration_image(&s.target, 1)?;
                r.require(
                    image.is_subspace_of(&f1),
                    format!("image at vertex {i} inside HH^1_(1) of the corner"),
                );
            }
            Err(e) => r.require(false, format!("corner map at vertex {i}: {e}")),
        }
    }
    Ok(r)
}

fn dimension_formula(ctx: &Context) -> CheckRecord {
    let id = "dimension_formula";
    let ll = ctx.algebra.loewy_length();
    if ll != 2 || !ctx.class.is_simple_digraph || !ctx.algebra.is_connected() {
        return CheckRecord::not_applicable(
            id,
            "needs Loewy length 2 and a connected simple digraph",
        );
    }
    let mut r = CheckRecord::new(id);
    let e = ctx.algebra.num_arrows() as i64;
    let l = ctx.algebra.num_vertices() as i64;
    let dim = ctx.hh1.dim() as i64;
    let expected = e - l + 1 + ctx.shift();
    r.measure("hh1_dim", dim);
    r.measure("arrows", e);
    r.measure("vertices", l);
    r.expect("hh1_dim", expected);
    r.expect("hh1_dim_at_most", (l - 1) * (l - 1));
    r.require(dim == expected, format!("dim HH^1 = {expected}"));
    r.require(dim <= (l - 1) * (l - 1), "dim HH^1 at most (l - 1)^2");
    r.require(ctx.hh1.lie().is_abelian(), "HH^1 is abelian");
    r
}

fn oracle_equivalence(ctx: &Context) -> Result<CheckRecord> {
    let id = "oracle_equivalence";
    if ctx.algebra.dim() > GENERIC_ORACLE_MAX_DIM {
        return Ok(CheckRecord::not_applicable(
            id,
            format!("algebra dimension above {GENERIC_ORACLE_MAX_DIM}"),
        ));
    }
    let mut r = CheckRecord::new(id);
    let g = hh1_generic(&ctx.algebra)?;
    let generic_solvable = g.lie().series_report().solvable;
    r.measure("generic_dim", g.dim());
    r.measure("generic_solvable", generic_solvable);
    r.expect("generic_dim", ctx.hh1.dim());
    r.require(g.dim() == ctx.hh1.dim(), "dimensions agree");
    r.require(
        generic_solvable == ctx.series.solvable,
        "solvability flags agree",
    );
    for rep in g.representatives() {
        r.require(
            ctx.hh1.class_of(rep.matrix()).is_ok(),
            "normalized generic representative lies in Der_E",
        );
    }
    Ok(r)
}

fn lie_validation(ctx: &Context) -> CheckRecord {
    let mut r = CheckRecord::new("lie_validation");
    let lie = ctx.hh1.lie();
    let revalidated =
        crate::lie::LieSC::new(lie.field(), lie.dim(), lie.structure_constants().to_vec());
    r.require(revalidated.is_ok(), "antisymmetry and Jacobi identity");
    let kappa = lie.killing_form();
    let n = lie.dim();
    let form = |x: &[crate::linalg::FieldElem], y: &[crate::linalg::FieldElem]| {
        crate::linalg::vector::dot(x, &kappa.mul_vec(y))
    };
    let mut invariant = true;
    for i in 0..n {
        for j in 0..n {
            let xy = lie.bracket(&lie.basis_vector(i), &lie.basis_vector(j));
            for k in 0..n {
                let yz = lie.bracket(&lie.basis_vector(j), &lie.basis_vector(k));
                if form(&xy, &lie.basis_vector(k)) != form(&lie.basis_vector(i), &yz) {
                    invariant = false;
                }
            }
        }
    }
    r.require(invariant, "Killing form invariance");
    r.require(
        ctx.hh1.bracket_is_well_defined(ctx.config.seed, 16),
        "bracket independent of representatives",
    );
    r
}

fn schur_maps(
    ctx: &Context,
    schur: &[std::result::Result<SchurMap, String>],
) -> Result<CheckRecord> {
    let mut r = CheckRecord::new("schur_maps");
    let h = &ctx.hh1;
    for (i, s) in schur.iter().enumerate() {
        if let Err(e) = s {
            r.require(false, format!("corner map at vertex {i}: {e}"));
        }
    }
    let all: Vec<usize> = (0..ctx.algebra.num_vertices()).collect();
    match schur_map(h, &all) {
        Ok(full) => {
            // compare with the map back from the generic realization
            let back: Vec<Vec<_>> = full
                .target
                .representatives()
                .iter()
                .map(|g| h.class_of(g.matrix()))
                .collect::<Result<_>>()?;
            let back = Matrix::from_columns(h.field(), h.dim(), &back)?;
            r.require(
                &back * &full.matrix == Matrix::identity(h.field(), h.dim()),
                "full corner map is the identity",
            );
        }
        Err(e) => r.require(false, format!("full corner map: {e}")),
    }
    if ctx.symmetric.is_yes() {
        for (i, s) in schur.iter().enumerate() {
            if ctx.ext1[i][i] == 0 {
                continue;
            }
            if let Ok(s) = s {
                r.measure(&format!("corner_map_rank_{i}"), s.matrix.rank());
                r.require(
                    !s.matrix.is_zero(),
                    format!("corner map at loop vertex {i} is nonzero"),
                );
            }
        }
    }
    Ok(r)
}
