//! One function per command. Each fills the report's inputs, records and
//! verdict, or returns a [`Failure`].

use std::sync::Arc;

use serde_json::{json, Value};

use divext::algebra::{AlgebraError, Element, Side};
use divext::audit::{all_hold, audit_t_fragment, audit_tn, audit_tn1, AxiomVerdict, TFragmentModel, Verdict};
use divext::bimodule::{bimodule_from_extension, dimension_sequence, BimoduleError, BimoduleRep, DEFAULT_MAX_LEN};
use divext::extension::{left_span, ExtensionError, ExtensionPresentation};
use divext::garcia::{coxeter_catalog, garcia_report, GarciaError, GarciaVerdict};
use divext::grid::Grid;
use divext::probe::{division_probe, ProbeConfig, ProbeVerdict};
use divext::spec::{parse_block, parse_elements, SpecDocument, SpecError};
use divext::tightness::{roundtrip_extension, roundtrip_model, BlockSolution, EmbeddingModel, TightnessError};

use crate::report::{scalars_json, scalars_text, Failure, Record, RunReport};
use crate::{Cli, Command};

type Outcome = Result<(), Failure>;

pub fn execute(cli: &Cli, doc: &SpecDocument, cfg: ProbeConfig, report: &mut RunReport) {
    let result = match cli.command {
        Command::CheckAlgebra => check_algebra(cli, doc, cfg, report),
        Command::Ladder => ladder(cli, doc, report),
        Command::Lemma12 => lemma12(cli, doc, report),
        Command::Transporter => transporter(cli, doc, report),
        Command::Garcia => garcia(cli, doc, cfg, report),
        Command::Catalog => catalog(cli, doc, report),
        Command::Tight => tight(cli, doc, report),
        Command::SolveBlock => solve_block(cli, doc, report),
        Command::Roundtrip => roundtrip(cli, doc, cfg, report),
        Command::Dimseq => dimseq(cli, doc, cfg, report),
        Command::AuditT => audit_t(cli, doc, cfg, report),
        Command::AuditTn => audit_embedding(cli, doc, cfg, report, false),
        Command::AuditTn1 => audit_embedding(cli, doc, cfg, report, true),
    };
    if let Err(f) = result {
        report.failure = Some(f);
    }
}

/// Verdicts a command can reach; `--expect` must name one of them.
pub fn verdicts(command: Command) -> &'static [&'static str] {
    match command {
        Command::CheckAlgebra => &["division", "not-division"],
        Command::Ladder => &["condition2", "no-condition2"],
        Command::Lemma12 => &["holds", "fails"],
        Command::Transporter | Command::SolveBlock => &["found", "none"],
        Command::Garcia => &["consistent-positive", "consistent-negative", "inconsistent"],
        Command::Catalog => &[],
        Command::Tight => &["tight", "not-tight"],
        Command::Roundtrip => &["agrees", "differs"],
        Command::Dimseq => &["periodic", "truncated"],
        Command::AuditT | Command::AuditTn | Command::AuditTn1 => &["holds", "fails"],
    }
}

/// The verdict a command demands when `--expect` is not given. Audits assert
/// that the model satisfies the theory.
pub fn default_expect(command: Command) -> Option<&'static str> {
    match command {
        Command::AuditT | Command::AuditTn | Command::AuditTn1 => Some("holds"),
        Command::Roundtrip => Some("agrees"),
        _ => None,
    }
}

fn check_expect(cli: &Cli) -> Outcome {
    let Some(e) = &cli.expect else { return Ok(()) };
    let allowed = verdicts(cli.command);
    let ok = if cli.command == Command::Catalog {
        e.parse::<usize>().is_ok()
    } else {
        allowed.contains(&e.as_str())
    };
    if ok {
        Ok(())
    } else if allowed.is_empty() {
        Err(Failure::input(format!("--expect for {} takes a module count", cli.command.name())))
    } else {
        Err(Failure::input(format!(
            "--expect for {} must be one of: {}",
            cli.command.name(),
            allowed.join(", ")
        )))
    }
}

fn algebra_failure(e: AlgebraError) -> Failure {
    match e {
        AlgebraError::NotInvertible { .. } | AlgebraError::ZeroElement => Failure::property(e.to_string()),
        _ => Failure::input(e.to_string()),
    }
}

fn extension_failure(e: ExtensionError) -> Failure {
    match e {
        ExtensionError::Algebra(a) => algebra_failure(a),
        ExtensionError::ZeroDivisor { .. } | ExtensionError::IndivisibleLadder { .. } => Failure::property(e.to_string()),
        _ => Failure::input(e.to_string()),
    }
}

fn tightness_failure(e: TightnessError) -> Failure {
    match e {
        TightnessError::Algebra(a) => algebra_failure(a),
        TightnessError::Extension(x) => extension_failure(x),
        TightnessError::NotDivision { .. } | TightnessError::SingularElement(_) | TightnessError::NotOneTight { .. } => {
            Failure::property(e.to_string())
        }
        _ => Failure::input(e.to_string()),
    }
}

fn bimodule_failure(e: BimoduleError) -> Failure {
    match e {
        BimoduleError::NotDivisionCertified { .. } | BimoduleError::Indivisible { .. } => Failure::property(e.to_string()),
        _ => Failure::input(e.to_string()),
    }
}

fn spec_failure(e: SpecError) -> Failure {
    Failure::input(e.to_string())
}

/// Resolves `--<kind> NAME`, or the only object of that kind.
fn pick<'d, T>(
    kind: &str,
    flag: Option<&String>,
    names: Vec<&'d str>,
    get: impl Fn(&str) -> Option<&'d Arc<T>>,
    report: &mut RunReport,
) -> Result<&'d Arc<T>, Failure> {
    let name = match flag {
        Some(n) => n.clone(),
        None => match names.as_slice() {
            [only] => only.to_string(),
            [] => return Err(Failure::input(format!("the spec defines no {kind}"))),
            _ => {
                return Err(Failure::input(format!(
                    "several {kind}s defined, pass --{kind} (one of: {})",
                    names.join(", ")
                )))
            }
        },
    };
    let found = get(&name).ok_or_else(|| Failure::input(format!("unknown {kind} {name:?}")))?;
    report.inputs.push((kind.to_string(), name));
    Ok(found)
}

fn extension<'d>(cli: &Cli, doc: &'d SpecDocument, report: &mut RunReport) -> Result<&'d Arc<ExtensionPresentation>, Failure> {
    pick(
        "extension",
        cli.extension.as_ref(),
        doc.extension_names().collect(),
        |n| doc.extension(n),
        report,
    )
}

fn embedding<'d>(cli: &Cli, doc: &'d SpecDocument, report: &mut RunReport) -> Result<&'d Arc<EmbeddingModel>, Failure> {
    pick(
        "embedding",
        cli.embedding.as_ref(),
        doc.embedding_names().collect(),
        |n| doc.embedding(n),
        report,
    )
}

fn element_json(e: &Element) -> Value {
    scalars_json(&e.0)
}

fn grid_json(m: &Grid) -> Value {
    let n = m.n();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| scalars_json(m.entry(i, j))).collect()))
            .collect(),
    )
}

fn bool_list(xs: &[bool]) -> String {
    xs.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
}

fn usize_list(xs: &[usize]) -> String {
    xs.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
}

fn check_algebra(cli: &Cli, doc: &SpecDocument, cfg: ProbeConfig, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let alg = pick(
        "algebra",
        cli.algebra.as_ref(),
        doc.algebra_names().collect(),
        |n| doc.algebra(n),
        report,
    )?;
    let v = alg.verify();
    report.records.push(
        Record::new("algebra")
            .field("dim", alg.dim())
            .field("associative", v.associative)
            .field("unital", v.unital)
            .line(format!(
                "dimension {}, associative: {}, unital: {}",
                alg.dim(),
                v.associative,
                v.unital
            )),
    );
    let probe = division_probe(alg, cfg);
    let mut rec = Record::new("probe")
        .field("verdict", probe.verdict.label())
        .field("seed", probe.seed)
        .field("trials", probe.trials);
    match &probe.verdict {
        ProbeVerdict::CertifiedNotDivision {
            element,
            certificate,
            side,
        } => {
            let (l, r, side) = match side {
                Side::Right => (element, certificate, "right"),
                Side::Left => (certificate, element, "left"),
            };
            rec = rec
                .field("element", element_json(element))
                .field("certificate", element_json(certificate))
                .field("side", side)
                .line(format!(
                    "certified not a division ring: ({}) * ({}) = 0",
                    alg.format_element(l),
                    alg.format_element(r)
                ));
        }
        ProbeVerdict::NoCounterexampleFound { checked, exhaustive } => {
            rec = rec.field("checked", *checked).field("exhaustive", *exhaustive);
            rec = rec.line(if *exhaustive {
                format!("division ring: all {checked} nonzero elements are invertible")
            } else {
                format!("no zero divisor found among {checked} probed elements")
            });
        }
    }
    report.records.push(rec);
    let verdict = if probe.verdict.is_refuted() { "not-division" } else { "division" };
    report.verdict = Some(verdict.into());
    Ok(())
}

fn ladder(cli: &Cli, doc: &SpecDocument, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let ext = extension(cli, doc, report)?;
    let data = ext.ladder().map_err(|e| extension_failure(e.clone()))?;
    let n = ext.n();
    for k in 0..n {
        report.records.push(
            Record::new("ladder")
                .field("k", k)
                .field("dim_l", data.l[k].dim())
                .field("dim_s", data.s[k].dim())
                .field("dim_d", data.d[k].dim())
                .field("dim_d_over_s", data.dims_over_s[k])
                .line(format!(
                    "k = {k}: dim L = {}, dim S = {}, dim D = {}, D over S = {}",
                    data.l[k].dim(),
                    data.s[k].dim(),
                    data.d[k].dim(),
                    data.dims_over_s[k]
                )),
        );
    }
    let condition2 = data.dims_over_s[..n.saturating_sub(1)].iter().all(|&d| d == 2);
    report.verdict = Some(if condition2 { "condition2" } else { "no-condition2" }.into());
    Ok(())
}

fn lemma12(cli: &Cli, doc: &SpecDocument, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let ext = extension(cli, doc, report)?;
    let mut all = true;
    for k in 1..ext.n() {
        let check = ext.lemma_regular_check(k).map_err(extension_failure)?;
        all &= check.holds;
        report.records.push(
            Record::new("lemma12")
                .field("k", k)
                .field("holds", check.holds)
                .field("span_dim", check.span_dim)
                .line(format!(
                    "k = {k}: L_{} + f_{k} S_{} has dimension {} of {}: {}",
                    k - 1,
                    k - 1,
                    check.span_dim,
                    ext.algebra().dim(),
                    if check.holds { "holds" } else { "fails" }
                )),
        );
    }
    report.verdict = Some(if all { "holds" } else { "fails" }.into());
    Ok(())
}

fn transporter(cli: &Cli, doc: &SpecDocument, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let ext = extension(cli, doc, report)?;
    let f = ext.algebra();
    let mut spans = Vec::new();
    for (flag, text) in [("h1", &cli.h1), ("h2", &cli.h2)] {
        let text = text.as_ref().ok_or_else(|| Failure::input(format!("transporter needs --{flag}")))?;
        let xs = parse_elements(text, f).map_err(spec_failure)?;
        report.inputs.push((flag.to_string(), text.clone()));
        spans.push(left_span(f, ext.subring(), &xs));
    }
    match ext.transporter(&spans[0], &spans[1]) {
        Ok(a) => {
            report.records.push(
                Record::new("transporter")
                    .field("found", true)
                    .field("dim", spans[0].dim())
                    .field("element", element_json(&a))
                    .line(format!("H1 * a = H2 for a = {}", f.format_element(&a))),
            );
            report.verdict = Some("found".into());
            Ok(())
        }
        Err(ExtensionError::NoTransporter) => {
            report.records.push(
                Record::new("transporter")
                    .field("found", false)
                    .field("dim", spans[0].dim())
                    .line("no nonzero a maps H1 into H2"),
            );
            report.verdict = Some("none".into());
            Ok(())
        }
        Err(e) => Err(extension_failure(e)),
    }
}

fn garcia(cli: &Cli, doc: &SpecDocument, cfg: ProbeConfig, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let ext = extension(cli, doc, report)?;
    let r = garcia_report(ext, cfg).map_err(|e| match e {
        GarciaError::TooSmall(_) => Failure::input(e.to_string()),
        GarciaError::Extension(x) => extension_failure(x),
        GarciaError::Bimodule(b) => bimodule_failure(b),
    })?;
    let mut rec = Record::new("garcia")
        .field("n", r.n)
        .field("condition2", r.condition2.clone())
        .field("dims_over_s", r.dims_over_s.clone())
        .field("sequence", r.sequence.clone())
        .field("period", r.period)
        .field("target", r.target.clone())
        .field("sequence_match", r.sequence_match)
        .field("verdict", r.verdict.label());
    for (k, c) in r.condition2.iter().enumerate() {
        rec = rec.line(format!(
            "condition2 k = {k}: {c} (D over S = {})",
            r.dims_over_s[k]
        ));
    }
    rec = rec
        .line(format!("sequence: ({})", usize_list(&r.sequence)))
        .line(format!(
            "target: ({}), match: {}",
            usize_list(&r.target),
            r.sequence_match
        ));
    report.records.push(rec);
    report.verdict = Some(r.verdict.label().into());
    if r.verdict == GarciaVerdict::Inconsistent {
        return Err(Failure::property(format!(
            "condition2 ({}) disagrees with the sequence match ({})",
            bool_list(&r.condition2),
            r.sequence_match
        )));
    }
    Ok(())
}

fn catalog(cli: &Cli, doc: &SpecDocument, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let n = match cli.n {
        Some(n) => {
            report.inputs.push(("n".into(), n.to_string()));
            n
        }
        None => extension(cli, doc, report)?.n(),
    };
    if n == 0 || n > divext::spec::MAX_N {
        return Err(Failure::input(format!("n must be between 1 and {}", divext::spec::MAX_N)));
    }
    let vectors = coxeter_catalog(n);
    for (i, (t, s)) in vectors.iter().enumerate() {
        report.records.push(
            Record::new("catalog")
                .field("index", i)
                .field("t", *t)
                .field("s", *s)
                .line(format!("({t}, {s})")),
        );
    }
    report.verdict = Some(vectors.len().to_string());
    Ok(())
}

fn tight(cli: &Cli, doc: &SpecDocument, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let model = embedding(cli, doc, report)?;
    let t = model.is_tight().map_err(tightness_failure)?;
    for at in &t.per_a {
        report.records.push(
            Record::new("tight")
                .field("a", at.a)
                .field("tight", at.tight)
                .field("rank", at.rank)
                .field("required_rank", at.required_rank)
                .line(format!(
                    "a = {}: {} (rank {} of {})",
                    at.a,
                    if at.tight { "tight" } else { "not tight" },
                    at.rank,
                    at.required_rank
                )),
        );
    }
    let per_a: Vec<bool> = t.per_a.iter().map(|x| x.tight).collect();
    report.records.push(
        Record::new("tightness")
            .field("tight", t.tight)
            .field("per_a", per_a.clone())
            .line(format!("per a: ({})", bool_list(&per_a))),
    );
    report.verdict = Some(if t.tight { "tight" } else { "not-tight" }.into());
    Ok(())
}

fn solve_block(cli: &Cli, doc: &SpecDocument, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let model = embedding(cli, doc, report)?;
    let a = cli.a.ok_or_else(|| Failure::input("solve-block needs --a"))?;
    let text = cli.block.as_ref().ok_or_else(|| Failure::input("solve-block needs --block"))?;
    report.inputs.push(("a".into(), a.to_string()));
    report.inputs.push(("block".into(), text.clone()));
    let block = parse_block(text, model.g()).map_err(spec_failure)?;
    match model.solve_for_block(a, &block).map_err(tightness_failure)? {
        BlockSolution::Found { coords, matrix } => {
            report.records.push(
                Record::new("solve-block")
                    .field("found", true)
                    .field("coords", scalars_json(&coords))
                    .field("matrix", grid_json(&matrix))
                    .line(format!("image coordinates {}", scalars_text(&coords)))
                    .line(format!("matrix {}", matrix.format_with(model.g()))),
            );
            report.verdict = Some("found".into());
        }
        BlockSolution::NoSolution { obstruction } => {
            report.records.push(
                Record::new("solve-block")
                    .field("found", false)
                    .field("obstruction", scalars_json(&obstruction))
                    .line(format!(
                        "no image matrix has this block; obstruction {}",
                        scalars_text(&obstruction)
                    )),
            );
            report.verdict = Some("none".into());
        }
    }
    Ok(())
}

enum Target<'d> {
    Extension(&'d Arc<ExtensionPresentation>),
    Embedding(&'d Arc<EmbeddingModel>),
    Bimodule(&'d Arc<BimoduleRep>),
}

/// Resolves one object among the allowed kinds, preferring explicit flags.
fn target<'d>(cli: &Cli, doc: &'d SpecDocument, report: &mut RunReport, kinds: &[&str]) -> Result<Target<'d>, Failure> {
    let given: Vec<&str> = kinds
        .iter()
        .copied()
        .filter(|k| match *k {
            "extension" => cli.extension.is_some(),
            "embedding" => cli.embedding.is_some(),
            _ => cli.bimodule.is_some(),
        })
        .collect();
    let kind = match given.as_slice() {
        [one] => *one,
        [] => {
            let present: Vec<&str> = kinds
                .iter()
                .copied()
                .filter(|k| match *k {
                    "extension" => doc.extension_names().next().is_some(),
                    "embedding" => doc.embedding_names().next().is_some(),
                    _ => doc.bimodule_names().next().is_some(),
                })
                .collect();
            match present.as_slice() {
                [one] => *one,
                _ => {
                    return Err(Failure::input(format!(
                        "{} needs one of --{}",
                        cli.command.name(),
                        kinds.join(", --")
                    )))
                }
            }
        }
        _ => return Err(Failure::input(format!("pass only one of --{}", kinds.join(", --")))),
    };
    Ok(match kind {
        "extension" => Target::Extension(extension(cli, doc, report)?),
        "embedding" => Target::Embedding(embedding(cli, doc, report)?),
        _ => Target::Bimodule(pick(
            "bimodule",
            cli.bimodule.as_ref(),
            doc.bimodule_names().collect(),
            |n| doc.bimodule(n),
            report,
        )?),
    })
}

fn ladder_json(dims: &[(usize, usize, usize)]) -> Value {
    Value::Array(dims.iter().map(|(l, s, d)| json!([l, s, d])).collect())
}

fn roundtrip(cli: &Cli, doc: &SpecDocument, cfg: ProbeConfig, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let agrees = match target(cli, doc, report, &["extension", "embedding"])? {
        Target::Embedding(model) => {
            let agrees = roundtrip_model(model, cfg).map_err(tightness_failure)?;
            report.records.push(
                Record::new("roundtrip")
                    .field("direction", "embedding")
                    .field("agrees", agrees)
                    .line(format!("embedding -> extension -> embedding: image {}", if agrees { "recovered" } else { "changed" })),
            );
            agrees
        }
        Target::Extension(ext) => {
            let rt = roundtrip_extension(ext, cfg).map_err(tightness_failure)?;
            let agrees = rt.agrees();
            let fmt = |d: &[(usize, usize, usize)]| {
                d.iter().map(|(l, s, dd)| format!("({l}, {s}, {dd})")).collect::<Vec<_>>().join(" ")
            };
            report.records.push(
                Record::new("roundtrip")
                    .field("direction", "extension")
                    .field("original", ladder_json(&rt.original))
                    .field("recovered", ladder_json(&rt.recovered))
                    .field("agrees", agrees)
                    .line(format!("ladder dimensions (L, S, D) before: {}", fmt(&rt.original)))
                    .line(format!("ladder dimensions (L, S, D) after:  {}", fmt(&rt.recovered))),
            );
            agrees
        }
        Target::Bimodule(_) => unreachable!("bimodules are not offered"),
    };
    report.verdict = Some(if agrees { "agrees" } else { "differs" }.into());
    Ok(())
}

fn dimseq(cli: &Cli, doc: &SpecDocument, cfg: ProbeConfig, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let max_len = cli.max_len.unwrap_or(DEFAULT_MAX_LEN);
    let owned;
    let m: &BimoduleRep = match target(cli, doc, report, &["extension", "bimodule"])? {
        Target::Extension(ext) => {
            owned = bimodule_from_extension(ext);
            &owned
        }
        Target::Bimodule(b) => b,
        Target::Embedding(_) => unreachable!("embeddings are not offered"),
    };
    report.inputs.push(("max_len".into(), max_len.to_string()));
    if max_len > 64 {
        return Err(Failure::input("--max-len must be at most 64"));
    }
    let seq = dimension_sequence(m, max_len, cfg).map_err(bimodule_failure)?;
    report.records.push(
        Record::new("dimseq")
            .field("entries", seq.entries.clone())
            .field("period", seq.period)
            .field("truncated", seq.truncated)
            .line(format!("entries: ({})", usize_list(&seq.entries)))
            .line(match seq.period {
                Some(p) => format!("period: {p}"),
                None => "period: none detected (truncated)".into(),
            }),
    );
    report.verdict = Some(if seq.truncated { "truncated" } else { "periodic" }.into());
    Ok(())
}

fn axiom_record(v: &AxiomVerdict) -> Record {
    let mut rec = Record::new("axiom")
        .field("axiom_id", v.id.to_string())
        .field("verdict", v.verdict.label());
    let mut line = format!("{}: {}", v.id, v.verdict.label());
    if let Some(note) = &v.note {
        rec = rec.field("note", note.as_str());
        line = format!("{line} ({note})");
    }
    rec = rec.line(line);
    if let Some(w) = &v.witness {
        let vectors: serde_json::Map<String, Value> =
            w.vectors.iter().map(|(name, xs)| (name.clone(), scalars_json(xs))).collect();
        rec = rec.field("witness", json!({"description": w.description, "vectors": vectors}));
        rec = rec.line(format!("  witness: {}", w.description));
        for (name, xs) in &w.vectors {
            rec = rec.line(format!("  {name} = {}", scalars_text(xs)));
        }
    }
    rec
}

fn push_audit(report: &mut RunReport, verdicts: &[AxiomVerdict]) {
    for v in verdicts {
        report.records.push(axiom_record(v));
    }
    let uninterpreted = verdicts.iter().filter(|v| v.verdict == Verdict::NotInterpretable).count();
    if uninterpreted > 0 {
        report.records.push(
            Record::new("audit")
                .field("not_interpretable", uninterpreted)
                .line(format!("{uninterpreted} axiom(s) not interpretable in this model")),
        );
    }
    report.verdict = Some(if all_hold(verdicts) { "holds" } else { "fails" }.into());
}

fn audit_t(cli: &Cli, doc: &SpecDocument, cfg: ProbeConfig, report: &mut RunReport) -> Outcome {
    check_expect(cli)?;
    let ext = extension(cli, doc, report)?;
    let k_max = cli.k_max.unwrap_or(ext.n());
    if k_max > divext::spec::MAX_N {
        return Err(Failure::input(format!("--k-max must be at most {}", divext::spec::MAX_N)));
    }
    report.inputs.push(("k_max".into(), k_max.to_string()));
    let verdicts = audit_t_fragment(&TFragmentModel::new(ext, k_max), cfg).map_err(extension_failure)?;
    push_audit(report, &verdicts);
    Ok(())
}

fn audit_embedding(cli: &Cli, doc: &SpecDocument, cfg: ProbeConfig, report: &mut RunReport, weak: bool) -> Outcome {
    check_expect(cli)?;
    let model = embedding(cli, doc, report)?;
    let verdicts = if weak { audit_tn1(model, cfg) } else { audit_tn(model, cfg) }.map_err(tightness_failure)?;
    push_audit(report, &verdicts);
    Ok(())
}
