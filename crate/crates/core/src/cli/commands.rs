use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::Result;
use crate::fock::{ModuleVector, OmegaSpec, Partition};
use crate::intertwiner::{
    check_h_bracket, check_l_minus1, depth_bound, f_map_equivariant, mock_log_check,
    unit_matrix, IntertwinerSpec, OperatorSeries,
};
use crate::logseries::TruncationWindow;
use crate::report::{Record, Report};
use crate::scalar::{format_rational, Rational};
use crate::virstruct::{
    character_check, check_l0_jordan, fusion_span_check, hidden_intertwiner_check,
    l0_block_at_chain, structure_diagram,
};

use super::cache::cached_singular_basis;
use super::config::RunConfig;

fn window(cfg: &RunConfig) -> Result<TruncationWindow> {
    TruncationWindow::symmetric(cfg.window, 0)
}

/// Vacuum legs at every index, plus `h(-1)` on the top index.
fn first_samples(o: &OmegaSpec, level: u32) -> Vec<ModuleVector> {
    let top = o.dim() - 1;
    let mut out: Vec<ModuleVector> = (0..o.dim()).map(ModuleVector::vacuum).collect();
    if level >= 1 {
        out.push(ModuleVector::monomial(&[1], top).expect("positive part"));
    }
    out
}

/// The vacuum at index 0 and one monomial per level on the top index.
fn second_samples(o: &OmegaSpec, level: u32) -> Vec<ModuleVector> {
    let top = o.dim() - 1;
    let mut out = vec![ModuleVector::vacuum(0)];
    for d in 0..=level {
        let p = Partition::all_of_size(d).into_iter().next().expect("p(d) >= 1");
        let v = ModuleVector::vacuum(top).create(&p);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn verify_one(report: &mut Report, spec: IntertwinerSpec, cfg: &RunConfig) -> Result<()> {
    let w = window(cfg)?;
    let summary = spec.summary();
    let (m1, m2) = (spec.omega1().nilpotent_order(), spec.omega2().nilpotent_order());
    let (lam, nu) = (spec.lambda().clone(), spec.nu().clone());
    let spec = if cfg.corrupt_t && spec.omega3().dim() >= 2 {
        let d3 = spec.omega3().dim();
        let bad = spec.t().add(&unit_matrix(d3, spec.t().cols(), d3 - 1, 0));
        spec.with_t_unchecked(bad)?
    } else {
        spec
    };
    let op = OperatorSeries::new(spec, w);
    let depth = op.depth()?;
    let bound = depth_bound(m1, m2, &lam, &nu) as u32;
    report.push(
        Record::new("depth", &summary)
            .window(w)
            .detail(json!({"depth": depth, "bound": bound}))
            .expect(depth == bound, || json!({"depth": depth, "expected": bound})),
    );
    let eq = f_map_equivariant(&op)?;
    report.push(
        Record::new("f_map_equivariant", &summary)
            .expect(eq, || json!("some F^(i) does not commute with h(0)")),
    );
    let n_max = cfg.brackets as i64;
    for w1 in first_samples(op.spec().omega1(), cfg.sample_level) {
        for w2 in second_samples(op.spec().omega2(), cfg.sample_level) {
            let args = json!({"w1": w1.to_string(), "w2": w2.to_string()});
            for n in -n_max..=n_max {
                let c = check_h_bracket(&op, &w1, n, &w2)?;
                report.push(
                    Record::from_outcome(format!("h_bracket n={n}"), &summary, &c)
                        .detail(args.clone()),
                );
            }
            let c = check_l_minus1(&op, &w1, &w2)?;
            report.push(Record::from_outcome("l_minus1", &summary, &c).detail(args));
        }
    }
    Ok(())
}

pub fn verify_intertwiner(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    if !cfg.grid {
        let (m1, m2, _) = cfg.jordan_sizes;
        let spec = IntertwinerSpec::identity(
            cfg.a.clone(),
            OmegaSpec::block(cfg.lambda.clone(), m1)?,
            OmegaSpec::block(cfg.nu.clone(), m2)?,
        )?;
        return verify_one(report, spec, cfg);
    }
    for &m1 in &cfg.size_grid {
        for &m2 in &cfg.size_grid {
            for lam in &cfg.lambda_grid {
                for nu in &cfg.nu_grid {
                    let spec = IntertwinerSpec::identity(
                        cfg.a.clone(),
                        OmegaSpec::block(lam.clone(), m1)?,
                        OmegaSpec::block(nu.clone(), m2)?,
                    )?;
                    verify_one(report, spec, cfg)?;
                }
            }
        }
    }
    Ok(())
}

/// Returns the diagram in TGF for `--out`.
pub fn structure(cfg: &RunConfig, report: &mut Report) -> Result<String> {
    let dim = cfg.jordan_sizes.2;
    let omega = OmegaSpec::block(Rational::zero(), dim)?;
    let d = structure_diagram(&omega, cfg.weight_bound)?;
    let summary = format!("omega=block(0,{dim}) weight_bound={}", cfg.weight_bound);
    for &(s, t) in &d.tested {
        let (src, dst) = (&d.nodes[s], &d.nodes[t]);
        let expected = src.m.abs_diff(dst.m) == 1;
        let found = d.arrows.contains(&(s, t));
        report.push(
            Record::new(format!("arrow {} -> {}", src.label(), dst.label()), &summary)
                .detail(json!({"member": found, "expected": expected}))
                .expect(found == expected, || {
                    json!({"source": src.label(), "target": dst.label(), "member": found})
                }),
        );
    }
    for n in (0..).take_while(|n| n * n <= cfg.weight_bound) {
        let ok = check_l0_jordan(n)?;
        let block = l0_block_at_chain(n)?;
        report.push(
            Record::new(format!("l0_jordan n={n}"), "omega=block(0,3)")
                .detail(json!({"largest_block": block}))
                .expect(ok && block >= 2, || {
                    json!({"identity": ok, "largest_block": block})
                }),
        );
    }
    report.push(
        Record::new("diagram", &summary).detail(json!({
            "nodes": d.nodes.iter().map(|n| n.label()).collect::<Vec<_>>(),
            "arrows": d.arrow_labels(),
            "tiers": d.nodes.iter().filter(|n| n.m == 0).map(|n| n.tier.name()).collect::<Vec<_>>(),
        })),
    );
    Ok(d.to_tgf())
}

pub fn character(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let r = character_check(&cfg.a, &cfg.lambda, cfg.levels)?;
    let summary = format!("a={} lambda={}", format_rational(&cfg.a), format_rational(&cfg.lambda));
    let dims: Vec<String> = r.level_dims.iter().map(|d| d.to_string()).collect();
    let first_bad = r
        .level_dims
        .iter()
        .zip(&r.partitions)
        .position(|(x, y)| x != y);
    report.push(
        Record::new("level_dims", &summary)
            .detail(json!({"dims": dims}))
            .expect(r.dims_match && r.eta_match, || json!({"first_mismatch_level": first_bad})),
    );
    let self_dual = cfg.lambda == cfg.a;
    report.push(
        Record::new("q_offset", &summary)
            .detail(json!({
                "central_charge": format_rational(&r.central_charge),
                "lowest_weight": format_rational(&r.lowest_weight),
                "q_offset": format_rational(&r.q_offset),
                "equals_minus_1_24": r.self_dual_offset,
            }))
            .expect(r.self_dual_offset == self_dual, || {
                json!({"q_offset": format_rational(&r.q_offset)})
            }),
    );
    Ok(())
}

pub fn hidden(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let w = window(cfg)?;
    for &(m, n) in &cfg.pairs {
        let r = hidden_intertwiner_check(m, n, &w)?;
        let summary = format!("hidden m={m} n={n}");
        report.push(
            Record::new("t_equivariant", &summary)
                .expect(r.equivariant, || json!("T does not commute with h(0)")),
        );
        let wit = r
            .log1_witness
            .as_ref()
            .map(|(k, v)| json!({"k": k, "log": 1, "vector": v.to_lines()}));
        report.push(
            Record::new("depth_one", &summary)
                .window(w)
                .detail(json!({"depth": r.depth, "log1": wit}))
                .expect(r.depth == 1 && wit.is_some(), || json!({"depth": r.depth})),
        );
        for &(mp, np, d) in &r.log_free {
            report.push(
                Record::new(format!("log_free m'={mp} n'={np}"), &summary)
                    .window(w)
                    .expect(d == 0, || json!({"depth": d})),
            );
        }
        report.push(Record::from_outcome("filtration", &summary, &r.filtration));
    }
    Ok(())
}

pub fn fusion(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    for &(m, n) in &cfg.pairs {
        let r = fusion_span_check(m, n, cfg.weight_bound)?;
        let summary = format!("fusion m={m} n={n} weight_bound={}", cfg.weight_bound);
        let dims: Vec<Value> = r
            .levels
            .iter()
            .map(|l| json!([l.weight, l.computed, l.expected.to_string()]))
            .collect();
        report.push(
            Record::new("graded_dims", &summary)
                .detail(json!({"ks": r.ks, "levels": dims}))
                .expect(r.pass(), || {
                    let l = r.first_mismatch().expect("a failing report has a mismatch");
                    json!({"weight": l.weight, "computed": l.computed, "expected": l.expected.to_string()})
                }),
        );
    }
    Ok(())
}

pub fn mock(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let w = window(cfg)?;
    let r = mock_log_check(&cfg.lambda, &cfg.nu, &cfg.a, &w, cfg.log_cutoff)?;
    let summary = format!(
        "mock lambda={} nu={} K={}",
        format_rational(&r.lambda),
        format_rational(&r.nu),
        r.cutoff
    );
    for (i, c) in r.l_minus1.iter().enumerate() {
        report.push(Record::from_outcome(format!("l_minus1 sample={i}"), &summary, c));
    }
    report.push(
        Record::new("top_log_nonzero", &summary)
            .window(w)
            .detail(json!({"log": r.cutoff - 1, "coefficient": r.top_log.to_lines(), "depth": r.depth}))
            .expect(r.top_log_nonzero(), || json!("x^0 log^(K-1) coefficient vanishes")),
    );
    Ok(())
}

/// `singular_basis` at every level up to the bound in `M(1)`; with `a = 0`
/// the dimension must be 1 at squares and 0 elsewhere.
pub fn singular(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    let omega = OmegaSpec::one_dim(cfg.lambda.clone());
    let check_dims = cfg.a.is_zero() && cfg.lambda.is_zero();
    for level in 0..=cfg.weight_bound {
        let (vs, status) = cached_singular_basis(cfg.cache_path.as_deref(), level, &omega, &cfg.a)?;
        let square = (0..=level).any(|m| m * m == level);
        let expected = usize::from(square);
        let ok = !check_dims || vs.len() == expected;
        report.push(
            Record::new(format!("singular level={level}"), format!("a={} lambda={}", format_rational(&cfg.a), format_rational(&cfg.lambda)))
                .detail(json!({
                    "dim": vs.len(),
                    "cache": status.as_str(),
                    "vectors": vs.iter().map(|v| v.vector.to_lines()).collect::<Vec<_>>(),
                }))
                .expect(ok, || json!({"dim": vs.len(), "expected": expected})),
        );
    }
    Ok(())
}
