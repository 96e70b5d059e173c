use std::fmt::Write as _;

use num_bigint::{BigInt, Sign};
use samuel_core::closure::DEFAULT_RR_WINDOW;
use samuel_core::hilbert::{render_binomial_form, ring_dimension, CoefficientPaths};
use samuel_core::reduction::DEFAULT_REDUCTION_CAP;
use samuel_core::{
    audit, hilbert_table, independence_sample, minimal_reduction, monomial_integral_closure, ratliff_rush_closure,
    rr_closed_powers, sally_descent_bracket, ConclusionStatus, Declaration, DepthBounds, DepthCertificate, Field,
    HilbertPolicy, HmContext, Ideal, TheoremId, Verdict,
};
use serde_json::{json, Value};

use crate::report::{int, ints, join, strs, Outcome, Report};

/// Options shared by every subcommand.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub bound: Option<usize>,
    pub cap: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum Command {
    Info,
    Hilbert,
    Series,
    Reduction { samples: Option<usize> },
    Depth,
    Rr,
    Closure,
    Homology,
    Audit { theorem: String, declare: Vec<String> },
}

type Result<T> = samuel_core::Result<T>;

pub fn run<F: Field>(command: &Command, ideal: &Ideal<F>, opts: &Options) -> Result<Report> {
    let mut report = dispatch(command, ideal, opts)?;
    let randomized = !matches!(
        command,
        Command::Info | Command::Hilbert | Command::Series | Command::Closure
    );
    if randomized {
        let generic = ideal.base().field().generic_distribution();
        writeln!(report.text, "generic coefficients: {generic}, seed {}", opts.seed).unwrap();
        report.bounds["generic"] = Value::String(generic);
    }
    Ok(report)
}

fn dispatch<F: Field>(command: &Command, ideal: &Ideal<F>, opts: &Options) -> Result<Report> {
    match command {
        Command::Info => info(ideal),
        Command::Hilbert => hilbert(ideal, opts),
        Command::Series => series(ideal, opts),
        Command::Reduction { samples } => reduction(ideal, opts, *samples),
        Command::Depth => depth(ideal, opts),
        Command::Rr => rr(ideal, opts),
        Command::Closure => closure(ideal),
        Command::Homology => homology(ideal, opts),
        Command::Audit { theorem, declare } => audit_cmd(ideal, opts, theorem, declare),
    }
}

fn policy(opts: &Options) -> HilbertPolicy {
    let mut p = HilbertPolicy::default();
    if let Some(cap) = opts.cap {
        p.cap = cap;
    }
    p
}

fn gens<F: Field>(ideal: &Ideal<F>) -> Vec<String> {
    ideal.generators().iter().map(ToString::to_string).collect()
}

fn info<F: Field>(ideal: &Ideal<F>) -> Result<Report> {
    let ring = ideal.ring();
    let d = ring_dimension(ring)?;
    let primary = ideal.is_m_primary()?;
    let colength = if primary { Some(ideal.colength()?) } else { None };
    let vars = ring.base().variables().to_vec();
    let quotient: Vec<String> = ring.quotient_generators().iter().map(ToString::to_string).collect();
    let mut text = format!("ring: k[{}]", vars.join(", "));
    if !quotient.is_empty() {
        write!(text, "/({})", quotient.join(", ")).unwrap();
    }
    write!(text, "\ndimension: {d}\nm-primary: {primary}\n").unwrap();
    if let Some(c) = colength {
        writeln!(text, "λ(R/I) = {c}").unwrap();
    }
    let result = json!({
        "vars": vars,
        "quotient": quotient,
        "ideal": gens(ideal),
        "dimension": int(d),
        "m_primary": primary,
        "colength": colength.map(int),
    });
    Ok(Report::new(result, text))
}

fn hilbert<F: Field>(ideal: &Ideal<F>, opts: &Options) -> Result<Report> {
    let table = hilbert_table(ideal, policy(opts))?;
    let (_, fit, _) = CoefficientPaths::compute(&table)?;
    let mut text = String::from(" n  λ(R/I^n)  λ(I^n/I^(n+1))\n");
    let diffs = table.first_differences();
    for (n, v) in table.values().iter().enumerate() {
        let diff = diffs.get(n).map(ToString::to_string).unwrap_or_default();
        writeln!(text, "{n:>2}  {v:>9}  {diff:>14}").unwrap();
    }
    writeln!(text, "e = ({})", join(&fit.coefficients.e)).unwrap();
    writeln!(text, "P(n) = {}", render_binomial_form(&fit.coefficients)).unwrap();
    writeln!(text, "postulation number: {}", fit.postulation).unwrap();
    let result = json!({
        "d": int(table.d()),
        "values": ints(table.values()),
        "first_differences": ints(&diffs),
        "coefficients": ints(&fit.coefficients.e),
        "postulation": int(fit.postulation),
        "stabilization_index": table.stabilization_index().map(int),
    });
    let mut report = Report::new(result, text);
    report.bounds = json!({ "cap": int(policy(opts).cap), "window": int(table.window()) });
    Ok(report)
}

fn series<F: Field>(ideal: &Ideal<F>, opts: &Options) -> Result<Report> {
    let table = hilbert_table(ideal, policy(opts))?;
    let (paths, fit, numerator) = CoefficientPaths::compute(&table)?;
    let agree = paths.agree();
    let text = format!(
        "HS(t) = ({}) / (1 - t)^{}\nP(n) = {}\ne (fit)         = ({})\ne (numerator)   = ({})\ne_1.. (Δ^d sum) = ({})\npaths agree: {agree}\n",
        render_series_numerator(&numerator.a),
        table.d(),
        render_binomial_form(&fit.coefficients),
        join(&fit.coefficients.e),
        join(&paths.from_numerator.e),
        join(&paths.from_delta),
    );
    let result = json!({
        "d": int(table.d()),
        "numerator": ints(&numerator.a),
        "coefficients": ints(&fit.coefficients.e),
        "from_numerator": ints(&paths.from_numerator.e),
        "from_delta": ints(&paths.from_delta),
        "paths_agree": agree,
    });
    let mut report = Report::new(result, text);
    report.bounds = json!({ "cap": int(policy(opts).cap) });
    if !agree {
        report.outcome = Outcome::Mismatch;
    }
    Ok(report)
}

/// `16 + 5t + 5t^2 - 5t^3 + ...`
fn render_series_numerator(a: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in a.iter().enumerate().filter(|(_, c)| c.sign() != Sign::NoSign) {
        let negative = c.sign() == Sign::Minus;
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let m = c.magnitude();
        let coeff = if k > 0 && m.to_string() == "1" {
            String::new()
        } else {
            m.to_string()
        };
        match k {
            0 => out.push_str(&m.to_string()),
            1 => write!(out, "{coeff}t").unwrap(),
            _ => write!(out, "{coeff}t^{k}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn reduction<F: Field>(ideal: &Ideal<F>, opts: &Options, samples: Option<usize>) -> Result<Report> {
    let cap = opts.cap.unwrap_or(DEFAULT_REDUCTION_CAP);
    let red = minimal_reduction(ideal, opts.seed, cap)?;
    let elements: Vec<String> = red.elements.iter().map(ToString::to_string).collect();
    let mut text = String::from("J generated by:\n");
    for e in &elements {
        writeln!(text, "  {e}").unwrap();
    }
    writeln!(text, "r_J(I) = {}", red.r).unwrap();
    let histogram = match samples {
        Some(k) => {
            let h = independence_sample(ideal, k, opts.seed)?;
            let shown: Vec<String> = h.iter().map(|(r, c)| format!("{r}: {c}")).collect();
            writeln!(text, "r_J over {k} draws: {{{}}}", shown.join(", ")).unwrap();
            Some(
                h.iter()
                    .map(|(r, c)| (r.to_string(), int(c)))
                    .collect::<serde_json::Map<_, _>>(),
            )
        }
        None => None,
    };
    let certificates: Vec<Value> = red
        .certificate
        .iter()
        .map(|s| json!({ "r": int(s.r), "span": int(s.span), "target": int(s.target), "holds": s.holds() }))
        .collect();
    let mut report = Report::new(
        json!({ "elements": elements, "r": int(red.r), "histogram": histogram }),
        text,
    );
    report.certificates = Value::Array(certificates);
    report.bounds = json!({ "cap": int(cap) });
    Ok(report)
}

fn certificate_json<F: Field>(c: &DepthCertificate<F>) -> Value {
    match c {
        DepthCertificate::RegularThrough { level, bound } => {
            json!({ "kind": "regular-through", "level": int(level), "bound": int(bound) })
        }
        DepthCertificate::Socle { level, degree, dim } => {
            json!({ "kind": "socle", "level": int(level), "degree": int(degree), "dim": int(dim) })
        }
        DepthCertificate::Kernel {
            level,
            degree,
            dim,
            seed,
        } => json!({
            "kind": "kernel", "level": int(level), "degree": int(degree), "dim": int(dim), "seed": int(seed)
        }),
        DepthCertificate::RatliffRush(w) => json!({
            "kind": "ratliff-rush", "n": int(w.n), "k": int(w.k), "element": w.element.to_string()
        }),
        DepthCertificate::Huckaba(h) => {
            json!({ "kind": "huckaba", "sum": int(h.sum), "e1": int(h.e1), "holds": h.holds })
        }
        DepthCertificate::ValabregaValla { first_failure } => {
            json!({ "kind": "valabrega-valla", "first_failure": first_failure.map(int) })
        }
    }
}

fn depth<F: Field>(ideal: &Ideal<F>, opts: &Options) -> Result<Report> {
    let bounds = DepthBounds {
        power_bound: opts.bound,
        ..DepthBounds::default()
    };
    let b = sally_descent_bracket(ideal, &bounds, opts.seed)?;
    let mut text = format!(
        "{} <= depth G(I) <= {}  (d = {}, r_J = {})\n",
        b.lower, b.upper, b.d, b.r
    );
    if !b.lower_proved {
        writeln!(text, "lower bound certified through degree {}", b.bounds.power_bound).unwrap();
    }
    for c in &b.certificates {
        writeln!(text, "  {}", certificate_json(c)).unwrap();
    }
    let result = json!({
        "lower": int(b.lower),
        "upper": int(b.upper),
        "d": int(b.d),
        "exact": b.is_exact(),
        "lower_proved": b.lower_proved,
        "r": int(b.r),
        "sequence": strs(&b.sequence),
    });
    let mut report = Report::new(result, text);
    report.certificates = Value::Array(b.certificates.iter().map(certificate_json).collect());
    report.bounds = json!({
        "power_bound": int(b.bounds.power_bound),
        "superficial_bound": int(b.bounds.superficial_bound),
        "retries": int(b.bounds.retries),
        "seeds": ints(&b.bounds.seeds),
    });
    Ok(report)
}

fn rr<F: Field>(ideal: &Ideal<F>, opts: &Options) -> Result<Report> {
    let res = ratliff_rush_closure(ideal, DEFAULT_RR_WINDOW)?;
    let bound = match opts.bound {
        Some(b) => b,
        None => minimal_reduction(ideal, opts.seed, DEFAULT_REDUCTION_CAP)?.r + 5,
    };
    let powers = rr_closed_powers(ideal, bound)?;
    let closure = gens(&res.closure);
    let mut text = format!("Ĩ = I: {}\n", res.is_closed);
    if !res.is_closed {
        writeln!(text, "Ĩ = ({})", closure.join(", ")).unwrap();
    }
    writeln!(text, "chain colengths: ({})", join(&res.chain_colengths)).unwrap();
    let open: Vec<usize> = powers.iter().filter(|(_, c)| !c).map(|(n, _)| *n).collect();
    if open.is_empty() {
        writeln!(text, "I^n closed for n = 1..{bound}").unwrap();
    } else {
        writeln!(text, "I^n not closed for n in ({})", join(&open)).unwrap();
    }
    let result = json!({
        "closed": res.is_closed,
        "closure": closure,
        "stabilized_at": int(res.stabilized_at),
        "chain_colengths": ints(&res.chain_colengths),
        "closed_powers": powers.iter().map(|(n, c)| json!({ "n": int(n), "closed": c })).collect::<Vec<_>>(),
    });
    writeln!(
        text,
        "colon chains are taken as stable after {DEFAULT_RR_WINDOW} equal steps; this is not a proof"
    )
    .unwrap();
    let mut report = Report::new(result, text);
    report.bounds = json!({ "power_bound": int(bound), "window": int(DEFAULT_RR_WINDOW), "window_heuristic": true });
    Ok(report)
}

fn closure<F: Field>(ideal: &Ideal<F>) -> Result<Report> {
    let c = monomial_integral_closure(ideal)?;
    let closed = ideal.equals(&c)?;
    let gens = gens(&c);
    let text = format!("Ī = ({})\nintegrally closed: {closed}\n", gens.join(", "));
    Ok(Report::new(
        json!({ "closure": gens, "integrally_closed": closed }),
        text,
    ))
}

fn homology<F: Field>(ideal: &Ideal<F>, opts: &Options) -> Result<Report> {
    let red = minimal_reduction(ideal, opts.seed, DEFAULT_REDUCTION_CAP)?;
    let ctx = HmContext::new(ideal, &red.elements)?;
    let cap = opts.cap.unwrap_or(samuel_core::homology::DEFAULT_HOMOLOGY_CAP);
    let totals = ctx.totals(cap)?;
    let (e1, e2) = ctx.e1_e2(&totals);
    let fit_e1 = ctx.fit.coefficients.get(1);
    let fit_e2 = ctx.fit.coefficients.get(2);
    let mut text = format!(
        "h_i = Σ_n λ(H_i(n)): ({})\nk_i = Σ_n n·λ(H_i(n)): ({})\nvia homology: e1 = {e1}, e2 = {e2}\nfitted:       e1 = {fit_e1}, e2 = {fit_e2}\n",
        join(&totals.h),
        join(&totals.k),
    );
    text.push_str(" n  Δ^d[P-H](n)  via λ(I^n/(I^n∩J))  via λ(I^n/JI^(n-1))\n");
    let mut identities = Vec::new();
    let mut all_hold = e1 == fit_e1 && e2 == fit_e2;
    for n in 1..=totals.support_max.max(1) {
        let (lhs, rhs, rhs2) = ctx.delta_identity(n)?;
        all_hold &= lhs == rhs && rhs == rhs2;
        writeln!(text, "{n:>2}  {lhs:>11}  {rhs:>17}  {rhs2:>19}").unwrap();
        identities
            .push(json!({ "n": int(n), "delta": int(&lhs), "via_outside_j": int(&rhs), "via_excess": int(&rhs2) }));
    }
    let result = json!({
        "h": ints(&totals.h),
        "k": ints(&totals.k),
        "e1": int(&e1),
        "e2": int(&e2),
        "fitted_e1": int(&fit_e1),
        "fitted_e2": int(&fit_e2),
        "identities": identities,
        "agree": all_hold,
        "sequence": strs(&red.elements),
    });
    let mut report = Report::new(result, text);
    report.certificates =
        json!([{ "kind": "slice-homology", "slices": totals.slices.iter().map(ints).collect::<Vec<_>>() }]);
    report.bounds = json!({
        "cap": int(cap),
        "cap_used": int(totals.cap_used),
        "support_max": int(totals.support_max),
        "stop": int(totals.stop),
        "slice_limit": int(ctx.slice_limit),
    });
    if !all_hold {
        report.outcome = Outcome::Mismatch;
    }
    Ok(report)
}

fn audit_cmd<F: Field>(ideal: &Ideal<F>, opts: &Options, theorem: &str, declare: &[String]) -> Result<Report> {
    let theorem: TheoremId = theorem.parse()?;
    let declarations = declare
        .iter()
        .map(|d| d.parse())
        .collect::<Result<Vec<Declaration>>>()?;
    let rep = audit(ideal, theorem, &declarations, opts.seed)?;
    let ev = &rep.evidence;
    let mut text = format!("{}: {}\n", rep.theorem, rep.verdict.name());
    for h in &rep.hypotheses {
        writeln!(text, "  hypothesis {:<28} {:<17} {}", h.name, h.status.name(), h.detail).unwrap();
    }
    for c in &rep.conclusions {
        writeln!(text, "  conclusion {:<28} {:<17} {}", c.name, c.status.name(), c.detail).unwrap();
    }
    writeln!(
        text,
        "  e = ({}), λ(R/I) = {}, r_J = {}",
        join(&ev.e),
        ev.colength,
        ev.r
    )
    .unwrap();
    let check = |name: &str, status: &str, detail: &str| json!({ "name": name, "status": status, "detail": detail });
    let result = json!({
        "theorem": rep.theorem.name(),
        "verdict": rep.verdict.name(),
        "declarations": strs(&rep.declarations),
        "hypotheses": rep.hypotheses.iter().map(|h| check(&h.name, h.status.name(), &h.detail)).collect::<Vec<_>>(),
        "conclusions": rep.conclusions.iter().map(|c| check(&c.name, c.status.name(), &c.detail)).collect::<Vec<_>>(),
        "evidence": {
            "e": ints(&ev.e),
            "colength": int(ev.colength),
            "d": int(ev.d),
            "r": int(ev.r),
            "colength_j": int(ev.colength_j),
            "i2_over_ji": int(ev.i2_over_ji),
            "paths_agree": ev.paths_agree,
            "integrally_closed": ev.integrally_closed,
            "rr_closed": ev.rr_closed,
            "depth": ev.depth.map(|(lo, hi, proved)| json!({ "lower": int(lo), "upper": int(hi), "lower_proved": proved })),
            "reduction_numbers": ev.reduction_numbers.as_ref().map(|h| {
                h.iter().map(|(r, c)| (r.to_string(), int(c))).collect::<serde_json::Map<_, _>>()
            }),
        },
    });
    let mut report = Report::new(result, text);
    if rep.verdict == Verdict::Fail {
        report.outcome = Outcome::Mismatch;
    }
    let evidence_only = rep
        .conclusions
        .iter()
        .any(|c| c.status == ConclusionStatus::EvidenceOnly);
    report.bounds =
        json!({ "independence_samples": evidence_only.then(|| int(samuel_core::audit::INDEPENDENCE_SAMPLES)) });
    Ok(report)
}
