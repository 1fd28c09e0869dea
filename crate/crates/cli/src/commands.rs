use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use shirshov::diophantine::{
    build_system, construct_solution, pell_pair, verify_assignment, Assignment, Dioph,
    SolutionData, SystemKind, VarietySystem,
};
use shirshov::io::{
    format_config, format_trace, parse_config, parse_presentation, serialize_presentation,
};
use shirshov::minsky::{simulate, MachineConfig, MinskyLab, Mode, Witness};
use shirshov::rewrite::{
    complete, ideal_member_with, is_groebner, normal_form_traced, Completion, Presentation,
};
use thiserror::Error;

use crate::report::{InputDigest, Outcome};
use crate::{Command, ModeArg, TmArgs, TmCommand, VarietyCommand};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or unreadable input.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(String),
}

impl From<shirshov::Error> for CliError {
    fn from(e: shirshov::Error) -> Self {
        use shirshov::Error::*;
        match e {
            Parse { .. }
            | UnknownSymbol(_)
            | InvalidAlphabet(_)
            | InvalidField(_)
            | Orientation { .. }
            | InvalidConfig(_) => CliError::Usage(e.to_string()),
            _ => CliError::Engine(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Context {
    trace: Option<PathBuf>,
    pub inputs: Vec<InputDigest>,
}

impl Context {
    pub fn new(trace: Option<PathBuf>) -> Self {
        Context {
            trace,
            inputs: Vec::new(),
        }
    }

    fn inline(&mut self, name: &str, text: &str) {
        self.inputs.push(InputDigest::of(name, text.as_bytes()));
    }

    fn file(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.inputs
            .push(InputDigest::of(&path.display().to_string(), &bytes));
        String::from_utf8(bytes)
            .map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))
    }

    /// A built-in name such as `@minsky-nil`, or a presentation file.
    fn presentation(&mut self, arg: &str) -> Result<Presentation> {
        if arg.starts_with('@') {
            self.inline("presentation", arg);
            return Ok(parse_presentation(arg)?);
        }
        let text = self.file(Path::new(arg))?;
        Ok(parse_presentation(&text)?)
    }

    fn write_trace(&self, text: &str) -> Result<()> {
        if let Some(path) = &self.trace {
            std::fs::write(path, text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

pub fn run(cmd: &Command, ctx: &mut Context) -> Result<Outcome> {
    match cmd {
        Command::Nf { pres, poly } => {
            let pres = ctx.presentation(pres)?;
            ctx.inline("poly", poly);
            let p = pres.poly(poly)?;
            let r = normal_form_traced(&p, &pres);
            ctx.write_trace(&format_trace(&r.steps, &pres))?;
            let nf = pres.render(&r.normal_form);
            Ok(Outcome::ok(json!({ "normal_form": nf }), nf).with_steps(r.steps.len()))
        }
        Command::Check { pres } => {
            let pres = ctx.presentation(pres)?;
            let report = is_groebner(&pres);
            let unresolved: Vec<Value> = report
                .unresolved
                .iter()
                .map(|c| {
                    json!({
                        "witness": pres.alphabet().render(&c.witness_word),
                        "s_element": pres.render(&c.s_element),
                    })
                })
                .collect();
            let mut text = format!(
                "is_basis: {}, compositions: {}, rules: {}",
                report.is_basis,
                report.compositions,
                pres.rules().len()
            );
            for u in &unresolved {
                text.push_str(&format!(
                    "\nunresolved: {} -> {}",
                    u["witness"].as_str().unwrap(),
                    u["s_element"].as_str().unwrap()
                ));
            }
            let payload = json!({
                "is_basis": report.is_basis,
                "compositions": report.compositions,
                "rules": pres.rules().len(),
                "unresolved": unresolved,
            });
            Ok(Outcome::ok(payload, text))
        }
        Command::Complete { pres, max_deg } => {
            let pres = ctx.presentation(pres)?;
            let done = complete(&pres, *max_deg);
            let frontier = match &done {
                Completion::Complete(_) => 0,
                Completion::Partial { frontier, .. } => frontier.len(),
            };
            let out = done.presentation();
            let serialized = serialize_presentation(out);
            let text = format!(
                "complete: {}, rules: {}, frontier: {}\n{}",
                done.is_complete(),
                out.rules().len(),
                frontier,
                serialized.trim_end()
            );
            let payload = json!({
                "complete": done.is_complete(),
                "rules": out.rules().len(),
                "frontier": frontier,
                "presentation": serialized,
            });
            Ok(Outcome::ok(payload, text))
        }
        Command::Member { pres, poly } => {
            let pres = ctx.presentation(pres)?;
            ctx.inline("poly", poly);
            let p = pres.poly(poly)?;
            let verified = is_groebner(&pres).is_basis;
            let r = normal_form_traced(&p, &pres);
            ctx.write_trace(&format_trace(&r.steps, &pres))?;
            let m = ideal_member_with(&p, &pres, verified);
            let nf = pres.render(&m.normal_form);
            let text = format!(
                "member: {}, verified_basis: {}, normal_form: {}",
                m.member, m.verified_basis, nf
            );
            let payload = json!({
                "member": m.member,
                "verified_basis": m.verified_basis,
                "normal_form": nf,
            });
            Ok(Outcome::ok(payload, text).with_steps(r.steps.len()))
        }
        Command::Tm(tm) => run_tm(tm, ctx),
        Command::Pell { n } => {
            let p = pell_pair(*n);
            let text = format!("X = {}, Y = {}", p.x, p.y);
            Ok(Outcome::ok(json!({ "n": n, "X": p.x, "Y": p.y }), text))
        }
        Command::Variety(v) => run_variety(v, ctx),
    }
}

fn lab_and_config(args: &TmArgs, ctx: &mut Context) -> Result<(MinskyLab, MachineConfig)> {
    ctx.inline("config", &args.config);
    let mode = match args.mode {
        ModeArg::Nil => Mode::Nilpotency,
        ModeArg::Zd => Mode::ZeroDivisor,
    };
    Ok((MinskyLab::new(mode), parse_config(&args.config)?))
}

fn run_tm(cmd: &TmCommand, ctx: &mut Context) -> Result<Outcome> {
    match cmd {
        TmCommand::Simulate { args, bound } => {
            let (lab, c) = lab_and_config(args, ctx)?;
            let trace = simulate(lab.spec(), &c, *bound);
            let configs: Vec<String> = trace.configs.iter().map(format_config).collect();
            let text = format!(
                "{}\nhalted: {}, steps: {}",
                configs.join("\n"),
                trace.halted,
                trace.steps()
            );
            let payload = json!({
                "halted": trace.halted,
                "steps": trace.steps(),
                "configs": configs,
            });
            Ok(Outcome::ok(payload, text).with_steps(trace.steps()))
        }
        TmCommand::Encode { args } => {
            let (lab, c) = lab_and_config(args, ctx)?;
            let a = lab.presentation().alphabet();
            let enc = lab.encode(&c);
            let main = match lab.mode() {
                Mode::Nilpotency => format!("t {}", a.render(&enc)),
                Mode::ZeroDivisor => a.render(&enc),
            };
            let text = format!("encoding: {}\nmain_word: {}", a.render(&enc), main);
            Ok(Outcome::ok(
                json!({ "encoding": a.render(&enc), "main_word": main }),
                text,
            ))
        }
        TmCommand::StepCheck { args } => {
            let (lab, c) = lab_and_config(args, ctx)?;
            let pres = lab.presentation();
            let start = pres.poly(&format!("t {}", pres.alphabet().render(&lab.encode(&c))))?;
            let r = normal_form_traced(&start, pres);
            ctx.write_trace(&format_trace(&r.steps, pres))?;
            let check = lab.step_check(&c);
            let (expected, actual) = (pres.render(&check.expected), pres.render(&check.actual));
            let text = format!(
                "holds: {}\nexpected: {}\nactual: {}",
                check.holds(),
                expected,
                actual
            );
            let payload = json!({ "holds": check.holds(), "expected": expected, "actual": actual });
            let out = Outcome::ok(payload, text).with_steps(r.steps.len());
            Ok(if check.holds() { out } else { out.with_exit(2) })
        }
        TmCommand::Witness { args, bound } => {
            let (lab, c) = lab_and_config(args, ctx)?;
            if *bound == 0 {
                return Err(CliError::Usage("--bound must be positive".into()));
            }
            let w = lab.halting_witness(&c, *bound);
            let (tag, n, code) = match w {
                Witness::Found(n) => ("found", Some(n), 0),
                Witness::NotWithinBound(_) => ("not_within_bound", None, 3),
                Witness::MainWordZero => ("main_word_zero", None, 0),
            };
            let text = match n {
                Some(n) => format!("{tag}: {n}"),
                None => format!("{tag} (bound {bound})"),
            };
            let payload = json!({ "result": tag, "n": n, "bound": bound });
            Ok(Outcome::ok(payload, text).with_exit(code))
        }
    }
}

fn parse_ints(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("`{}` is not an integer", s.trim())))
        })
        .collect()
}

/// Accepts either JSON or the line-based text format.
fn load_system(ctx: &mut Context, path: &Path) -> Result<VarietySystem> {
    let text = ctx.file(path)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))
    } else {
        Ok(VarietySystem::parse_text(&text)?)
    }
}

fn load_assignment(ctx: &mut Context, path: &Path) -> Result<Assignment> {
    let text = ctx.file(path)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))
    } else {
        Ok(Assignment::parse_text(&text)?)
    }
}

fn run_variety(cmd: &VarietyCommand, ctx: &mut Context) -> Result<Outcome> {
    match cmd {
        VarietyCommand::Gen {
            real,
            complex,
            dioph,
        } => {
            let kind = match (real, complex) {
                (Some(d), None) => SystemKind::Real { d: *d },
                (None, Some(de)) => SystemKind::Complex { d: de[0], e: de[1] },
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --real, --complex".into(),
                    ))
                }
            };
            let dioph: Option<Dioph> = match dioph {
                Some(path) => {
                    let text = ctx.file(path)?;
                    Some(serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))?)
                }
                None => None,
            };
            let sys = build_system(kind, dioph.as_ref())?;
            let text = sys.to_string().trim_end().to_string();
            Ok(Outcome::ok(json!({ "system": sys }), text))
        }
        VarietyCommand::Solve { n, complex } => {
            ctx.inline("N", n);
            let data = if *complex {
                SolutionData::Complex(n.split(';').map(parse_ints).collect::<Result<_>>()?)
            } else {
                SolutionData::Real(parse_ints(n)?)
            };
            let a = construct_solution(&data)?;
            let text = a.to_string().trim_end().to_string();
            Ok(Outcome::ok(json!({ "assignment": a }), text))
        }
        VarietyCommand::Verify { system, assignment } => {
            let sys = load_system(ctx, system)?;
            let a = load_assignment(ctx, assignment)?;
            let ok = verify_assignment(&sys, &a)?;
            Ok(Outcome::ok(
                json!({ "verified": ok }),
                format!("verified: {ok}"),
            ))
        }
    }
}
