use morita_core::bimodules::{
    balanced_tensor, balancing_subspace, column_module, dual_bimodule, induced_completion, is_induced, mu_map,
    random_bimodule, rebracketing, regular_bimodule, right_mu_map, row_module, BimoduleMap, BimoduleRef,
};
use morita_core::exactla::{kernel, l1_operator_norm, LinearMap, Rational, SparseVec};
use morita_core::homology::{derivation_space, diagonal_check, hochschild_table, HomologyError};
use morita_core::morita::{split_maps, verify_split, verify_witness, witness_brandt_full, witness_matrix_vs_scalars};
use morita_core::structures::{
    brandt, matrix_algebra, matrix_group_to_contracted, scalars, semigroup_algebra, AlgebraRef,
};

use crate::campaign::{Check, Instance};
use crate::report::{CheckRecord, Status};

/// Seed of the random coefficient module in the homology battery.
pub const RANDOM_MODULE_SEED: u64 = 20_251;
/// Dimension cap for the random coefficient module before completion.
pub const RANDOM_MODULE_MAX_DIM: usize = 30;

type Outcome = Result<(), String>;

pub fn run_check(check: Check, inst: &Instance, n_max: usize, size_limit: u128) -> CheckRecord {
    let mut rec = CheckRecord::new(check, inst);
    let outcome = match check {
        Check::Lemma1 => lemma1(inst, &mut rec),
        Check::Split => split(inst, &mut rec),
        Check::SelfInduced => self_induced(inst, &mut rec),
        Check::MoritaMatrix => morita_matrix(inst, &mut rec),
        Check::MoritaBrandt => morita_brandt(inst, &mut rec),
        Check::Homology => homology(inst, n_max, size_limit, &mut rec),
        Check::Diagonal => diagonal(inst, &mut rec),
    };
    match outcome {
        Ok(()) if rec.status != Status::Skipped => {
            rec.status = Status::Pass;
        }
        Ok(()) => {}
        Err(msg) => {
            rec.status = Status::Fail;
            rec.summary = msg;
        }
    }
    rec
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn norm_pair(rec: &mut CheckRecord, key: &str, f: &LinearMap) -> (Rational, Option<Rational>) {
    let n = l1_operator_norm(f);
    let inv = f.inverse().map(|i| l1_operator_norm(&i));
    rec.norms.insert(key.to_string(), n.to_string());
    rec.norms.insert(
        format!("{key}_inverse"),
        inv.as_ref().map_or_else(|| "none".to_string(), Rational::to_string),
    );
    (n, inv)
}

fn is_isometric(pair: &(Rational, Option<Rational>)) -> bool {
    pair.0.is_one() && pair.1.as_ref().is_some_and(Rational::is_one)
}

/// `N = kernel(ν̄)` for the trace pairing, plus the explicit members.
fn lemma1(inst: &Instance, rec: &mut CheckRecord) -> Outcome {
    let n = inst.i;
    let c = scalars();
    let m = matrix_algebra(n).map_err(err)?;
    let row = row_module(&c, &m, n);
    let col = column_module(&m, &c, n);
    let bal = balancing_subspace(&row, &col, &m).map_err(err)?;
    // ν(δ_a ⊗ δ_b) = [a = b], written out independently of the module code
    let nu_images: Vec<SparseVec> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                SparseVec::unit(0)
            } else {
                SparseVec::new()
            }
        })
        .collect();
    let nu = LinearMap::from_images(1, &nu_images);
    let ker = kernel(&nu);
    rec.dimensions.insert("tensor".into(), n * n);
    rec.dimensions.insert("balancing".into(), bal.dim());
    rec.dimensions.insert("kernel_nu".into(), ker.dim());
    ensure(bal == ker, || "balancing subspace differs from ker ν".into())?;
    for a in 0..n {
        for b in 0..n {
            if a != b {
                ensure(bal.contains(&SparseVec::unit(a * n + b)), || {
                    format!("δ_{}⊗δ_{} is not in N", a + 1, b + 1)
                })?;
                let diff = SparseVec::from_pairs([(b * n + b, Rational::one()), (a * n + a, -Rational::one())]);
                ensure(bal.contains(&diff), || {
                    format!("δ_{0}⊗δ_{0} − δ_{1}⊗δ_{1} is not in N", b + 1, a + 1)
                })?;
            }
        }
    }
    let bt = balanced_tensor(&row, &col, &m).map_err(err)?;
    rec.dimensions.insert("balanced_tensor".into(), bt.dim());
    ensure(bt.dim() == 1, || format!("balanced tensor has dimension {}", bt.dim()))?;
    rec.summary = format!("N = ker ν, dim N = {} of {}", bal.dim(), n * n);
    Ok(())
}

fn split(inst: &Instance, rec: &mut CheckRecord) -> Outcome {
    let seq = split_maps(inst.i, inst.group()).map_err(err)?;
    let report = verify_split(&seq);
    rec.dimensions.insert("semigroup_algebra".into(), seq.full.dim());
    rec.dimensions.insert("contracted".into(), seq.contracted.dim());
    rec.ranks.insert("u".into(), seq.u.rank());
    rec.ranks.insert("theta".into(), seq.theta.rank());
    let failures = report.failures();
    ensure(failures.is_empty(), || format!("failed: {}", failures.join(", ")))?;
    rec.summary = format!(
        "exact, split, θ bijective multiplicative; dim ℓ¹(S) = {}",
        seq.full.dim()
    );
    Ok(())
}

fn record_mu(rec: &mut CheckRecord, key: &str, mu: &BimoduleMap) -> bool {
    norm_pair(rec, key, mu.map());
    rec.ranks.insert(key.to_string(), mu.map().rank());
    mu.is_bijective()
}

fn self_induced(inst: &Instance, rec: &mut CheckRecord) -> Outcome {
    let n = inst.i;
    let c = scalars();
    let m = matrix_algebra(n).map_err(err)?;
    let a = semigroup_algebra(&brandt(n, inst.group()).map_err(err)?);
    let col = column_module(&m, &c, n);
    let row = row_module(&c, &m, n);
    for (key, e) in [("ell1_column", &col), ("ell1_row", &row)] {
        let s = is_induced(e).map_err(err)?;
        ensure(s.two_sided, || format!("{key} is not two-sided induced ({s:?})"))?;
    }
    for (key, alg) in [("mu_matrix", &m), ("mu_semigroup", &a)] {
        let (bt, mu) = mu_map(&regular_bimodule(alg)).map_err(err)?;
        rec.dimensions.insert(format!("{key}_source"), bt.dim());
        ensure(record_mu(rec, key, &mu), || format!("{key} is not bijective"))?;
    }
    for (key, alg) in [("mu_right_matrix", &m), ("mu_right_semigroup", &a)] {
        let (_, mu) = right_mu_map(&regular_bimodule(alg)).map_err(err)?;
        ensure(record_mu(rec, key, &mu), || format!("{key} is not bijective"))?;
    }
    // (M ⊗_M ℓ¹) ⊗_ℂ ℂ ≅ M ⊗_M (ℓ¹ ⊗_ℂ ℂ), and the same for ℓ¹(S) over itself
    let reg_c = regular_bimodule(&c);
    let reg_m = regular_bimodule(&m);
    let reg_a = regular_bimodule(&a);
    for (key, x, e, y) in [
        ("rebracket_column", &reg_m, &col, &reg_c),
        ("rebracket_row", &reg_c, &row, &reg_m),
        ("rebracket_semigroup", &reg_a, &reg_a, &reg_a),
    ] {
        let r = rebracketing(x, e, y).map_err(err)?;
        rec.dimensions.insert(key.to_string(), r.left_first.dim());
    }
    rec.summary = format!("M_{n} and {} self-induced; ℓ¹({n}) two-sided induced", a.name());
    Ok(())
}

fn morita_matrix(inst: &Instance, rec: &mut CheckRecord) -> Outcome {
    let n = inst.i;
    let w = witness_matrix_vs_scalars(n).map_err(err)?;
    let report = verify_witness(&w);
    fill_witness(rec, &report);
    // δ_i ⊗ δ_j ↦ δ_(i,j) on the bare tensor product
    let images: Vec<SparseVec> = (0..n * n).map(SparseVec::unit).collect();
    let anchor = LinearMap::from_images(n * n, &images);
    let pair = norm_pair(rec, "anchor_tensor_to_matrix", &anchor);
    ensure(is_isometric(&pair), || "δ_i⊗δ_j ↦ δ_(i,j) is not isometric".into())?;
    ensure(report.passed(), || failure_text(&report))?;
    rec.summary = format!("M_{n} ~ C: all four conditions hold");
    Ok(())
}

fn morita_brandt(inst: &Instance, rec: &mut CheckRecord) -> Outcome {
    let g = inst.group();
    let w = witness_brandt_full(inst.i, inst.j, g).map_err(err)?;
    let report = verify_witness(&w);
    fill_witness(rec, &report);
    let swapped = verify_witness(&w.swapped());
    ensure(swapped.passed(), || {
        format!("swapped witness: {}", failure_text(&swapped))
    })?;
    for (key, size) in [("anchor_matrix_group_i", inst.i), ("anchor_matrix_group_j", inst.j)] {
        let pair = norm_pair(rec, key, &matrix_group_to_contracted(size, g));
        ensure(is_isometric(&pair), || format!("{key} is not isometric"))?;
    }
    ensure(report.passed(), || failure_text(&report))?;
    rec.summary = format!("{}: all four conditions hold (constructed witness)", w.name);
    Ok(())
}

fn fill_witness(rec: &mut CheckRecord, r: &morita_core::morita::WitnessReport) {
    rec.dimensions.insert("a".into(), r.dim_a);
    rec.dimensions.insert("b".into(), r.dim_b);
    rec.dimensions.insert("p".into(), r.dim_p);
    rec.dimensions.insert("q".into(), r.dim_q);
    if let Some(d) = r.dim_p_tensor_q {
        rec.dimensions.insert("p_tensor_q".into(), d);
    }
    if let Some(d) = r.dim_q_tensor_p {
        rec.dimensions.insert("q_tensor_p".into(), d);
    }
    rec.ranks.insert("iso_pq".into(), r.rank_iso_pq);
    rec.ranks.insert("iso_qp".into(), r.rank_iso_qp);
    let show = |x: &Option<Rational>| x.as_ref().map_or_else(|| "none".to_string(), Rational::to_string);
    rec.norms.insert("iso_pq".into(), r.norm_iso_pq.to_string());
    rec.norms.insert("iso_pq_inverse".into(), show(&r.norm_iso_pq_inverse));
    rec.norms.insert("iso_qp".into(), r.norm_iso_qp.to_string());
    rec.norms.insert("iso_qp_inverse".into(), show(&r.norm_iso_qp_inverse));
    for c in &r.conditions {
        rec.notes.push(format!(
            "{}: {}{}",
            c.name,
            if c.passed { "pass" } else { "fail" },
            c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()
        ));
    }
    if let Some(n) = &r.note {
        rec.notes.push(n.clone());
    }
}

fn failure_text(r: &morita_core::morita::WitnessReport) -> String {
    r.first_failure().map_or_else(String::new, |c| {
        format!("{} failed: {}", c.name, c.detail.as_deref().unwrap_or(""))
    })
}

/// The coefficient battery: regular, completed dual regular, completed random.
pub fn battery(a: &AlgebraRef) -> Result<Vec<(String, BimoduleRef)>, String> {
    let reg = regular_bimodule(a);
    let dual = dual_bimodule(&reg);
    let random = random_bimodule(a, RANDOM_MODULE_SEED, RANDOM_MODULE_MAX_DIM);
    Ok(vec![
        ("regular".to_string(), reg),
        (
            "completed_dual_regular".to_string(),
            induced_completion(a, &dual).map_err(err)?,
        ),
        (
            "completed_random".to_string(),
            induced_completion(a, &random).map_err(err)?,
        ),
    ])
}

fn homology(inst: &Instance, n_max: usize, size_limit: u128, rec: &mut CheckRecord) -> Outcome {
    let a = semigroup_algebra(&brandt(inst.i, inst.group()).map_err(err)?);
    rec.dimensions.insert("algebra".into(), a.dim());
    let reg = regular_bimodule(&a);
    let mut skipped = Vec::new();
    for (key, e) in battery(&a)? {
        rec.dimensions.insert(format!("{key}_module"), e.dim());
        let t = match hochschild_table(&a, &e, n_max, size_limit) {
            Ok(t) => t,
            Err(x @ HomologyError::SizeLimit { .. }) => {
                skipped.push(format!("{key}: {x}"));
                continue;
            }
            Err(x) => return Err(format!("{key}: {x}")),
        };
        let h: Vec<usize> = t.homology.iter().map(|r| r.betti).collect();
        let co: Vec<usize> = t.cohomology.iter().map(|r| r.betti).collect();
        rec.betti.insert(format!("{key}_homology"), h.clone());
        rec.betti.insert(format!("{key}_cohomology"), co.clone());
        ensure(h[1..].iter().all(|&b| b == 0), || {
            format!("{key}: H_n ≠ 0, betti {h:?}")
        })?;
        ensure(co[1..].iter().all(|&b| b == 0), || {
            format!("{key}: H^n ≠ 0, betti {co:?}")
        })?;
        let ds = derivation_space(&a, &dual_bimodule(&e)).map_err(err)?;
        rec.ranks.insert(format!("{key}_derivations"), ds.derivation_dim);
        rec.ranks.insert(format!("{key}_inner"), ds.inner_dim);
        ensure(ds.derivation_dim - ds.inner_dim == co[1], || {
            format!("{key}: outer derivations ≠ H^1")
        })?;
        let r = rebracketing(&reg, &e, &reg).map_err(err)?;
        ensure(r.left_first.dim() == e.dim(), || {
            format!("{key}: A⊗_A E⊗_A A has the wrong dimension")
        })?;
    }
    rec.notes.push(format!(
        "random coefficient module: seed {RANDOM_MODULE_SEED}, dimension cap {RANDOM_MODULE_MAX_DIM}, completed to A⊗_A F⊗_A A"
    ));
    rec.notes
        .push("H_0 is finite-dimensional, so its quotient seminorm is a norm".into());
    if !skipped.is_empty() {
        rec.status = Status::Skipped;
        rec.summary = format!("size limit: {}", skipped.join("; "));
        rec.notes.extend(skipped);
        return Ok(());
    }
    rec.summary = format!("H_n = H^n = 0 for 1 ≤ n ≤ {n_max} on the 3-module battery; duality holds");
    Ok(())
}

fn diagonal(inst: &Instance, rec: &mut CheckRecord) -> Outcome {
    let a = semigroup_algebra(&brandt(inst.i, inst.group()).map_err(err)?);
    rec.dimensions.insert("algebra".into(), a.dim());
    let d = diagonal_check(&a)
        .map_err(err)?
        .ok_or_else(|| "no diagonal exists".to_string())?;
    ensure(morita_core::homology::verify_diagonal(&a, &d.element), || {
        "diagonal fails substitution".into()
    })?;
    rec.dimensions.insert("diagonal_support".into(), d.element.nnz());
    rec.norms.insert("diagonal_l1".into(), d.element.l1_norm().to_string());
    rec.summary = format!("diagonal with {} terms verified", d.element.nnz());
    Ok(())
}
