//! Command execution and report records.

use std::fmt::Write as _;

use serde::Serialize;

use sigmaframe::booleanization::{
    bool_congruence, check_overt, enumerate_congruences, is_overlap_cover, is_sigma_overlap_algebra, quotient,
    Congruence, CoverPosViolation, OvertViolation, Positivity,
};
use sigmaframe::enumeration::Enumeration;
use sigmaframe::formal_cover::{CoverLawViolation, CoverPresentation, Derivation, Envelope, FiniteCover, Subset};
use sigmaframe::generators::{baire_cover, boolean_lattice, cantor_cover, chain_lattice, discrete_cover, Word};
use sigmaframe::sigma_frame::find_isomorphism;
use sigmaframe::DistributiveLattice;

use crate::program::{discrete_names, Object, Program};
use crate::syntax::{CheckKind, Command, CommandKind, Target};

#[derive(Debug, Clone)]
pub struct Options {
    /// Budget for `derive` commands that do not give one.
    pub budget: u64,
    /// Largest cover base whose frame is enumerated.
    pub max_base: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: 1000,
            max_base: 15,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// One record per command.
#[derive(Debug, Clone, Serialize)]
pub struct CommandRecord {
    pub record: &'static str,
    /// The command as written in canonical form.
    pub source: String,
    pub line: usize,
    pub command: &'static str,
    pub target: String,
    pub status: Status,
    pub message: String,
    pub details: Details,
}

/// Closing record.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryRecord {
    pub record: &'static str,
    pub commands: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub status: Status,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub law: &'static str,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientTable {
    pub elements: Vec<String>,
    /// All pairs `[x, y]` with `x ≤ y`, `x ≠ y`.
    pub leq: Vec<[String; 2]>,
    pub pos: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub depth: usize,
    pub goal: String,
    pub rule: &'static str,
    /// Base element of `U` for `member`, axiom site for `axiom` and `family`.
    pub via: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Embedding {
    pub element: String,
    pub saturation: Vec<String>,
}

/// Command-specific payload. Serialized without a tag; the `command` field
/// of the record tells which variant is present.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Details {
    Check {
        check: &'static str,
        elements: usize,
        witness: Option<Witness>,
    },
    Booleanize {
        classes: Vec<Vec<String>>,
        quotient: QuotientTable,
        already_overlap_algebra: bool,
    },
    Congruences {
        count: usize,
        congruences: Vec<Vec<Vec<String>>>,
    },
    Derive {
        goal: String,
        cover: Vec<String>,
        budget: u64,
        outcome: &'static str,
        steps: Option<u64>,
        trace: Vec<TraceStep>,
    },
    Envelope {
        base: usize,
        frame: usize,
        isomorphic: bool,
        embedding: Vec<Embedding>,
    },
    Empty {},
}

#[derive(Debug, Clone)]
pub struct Report {
    pub records: Vec<CommandRecord>,
    pub summary: SummaryRecord,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.status == Status::Pass {
            0
        } else {
            1
        }
    }

    /// JSON Lines: one object per command, then the summary.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("records serialize"));
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(out, "line {}: {}: {}", r.line, r.source, r.status.word());
            let _ = writeln!(out, "  {}", r.message);
            text_details(&mut out, &r.details);
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} commands: {} passed, {} failed, {} errors",
            s.commands, s.passed, s.failed, s.errors
        );
        out
    }
}

fn text_details(out: &mut String, d: &Details) {
    match d {
        Details::Check { witness: Some(w), .. } => {
            let _ = writeln!(out, "  witness ({}): {}", w.law, w.elements.join(" "));
        }
        Details::Booleanize { classes, quotient, .. } => {
            let classes: Vec<String> = classes.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
            let _ = writeln!(out, "  classes: {}", classes.join(" "));
            let _ = writeln!(out, "  quotient: {}", quotient.elements.join(" "));
            let leq: Vec<String> = quotient.leq.iter().map(|[a, b]| format!("{a}<={b}")).collect();
            if !leq.is_empty() {
                let _ = writeln!(out, "  order: {}", leq.join(", "));
            }
        }
        Details::Congruences { congruences, .. } => {
            for c in congruences {
                let classes: Vec<String> = c.iter().map(|k| format!("{{{}}}", k.join(","))).collect();
                let _ = writeln!(out, "  {}", classes.join(" "));
            }
        }
        Details::Derive { trace, .. } => {
            for s in trace {
                let _ = writeln!(out, "  {}{} by {} {}", "  ".repeat(s.depth), s.goal, s.rule, s.via);
            }
        }
        Details::Envelope { embedding, .. } => {
            for e in embedding {
                let _ = writeln!(out, "  {} -> {{{}}}", e.element, e.saturation.join(","));
            }
        }
        _ => {}
    }
}

/// The instance a target stands for.
enum Resolved {
    Lattice(DistributiveLattice, Option<Positivity>),
    Cover(FiniteCover, Option<Positivity>),
    Strings(CoverPresentation<Word>, bool),
}

struct Outcome {
    status: Status,
    message: String,
    details: Details,
}

fn outcome(status: Status, message: impl Into<String>, details: Details) -> Outcome {
    Outcome {
        status,
        message: message.into(),
        details,
    }
}

fn error(message: impl Into<String>) -> Outcome {
    outcome(Status::Error, message, Details::Empty {})
}

pub fn run(program: &Program, options: &Options) -> Report {
    let records: Vec<CommandRecord> = program
        .commands
        .iter()
        .map(|c| {
            let o = match resolve(program, &c.target) {
                Ok(r) => execute(c, r, options),
                Err(message) => error(message),
            };
            CommandRecord {
                record: "result",
                source: c.to_string(),
                line: c.span.line,
                command: c.keyword(),
                target: c.target.to_string(),
                status: o.status,
                message: o.message,
                details: o.details,
            }
        })
        .collect();
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let (passed, failed, errors) = (count(Status::Pass), count(Status::Fail), count(Status::Error));
    let summary = SummaryRecord {
        record: "summary",
        commands: records.len(),
        passed,
        failed,
        errors,
        status: if passed == records.len() { Status::Pass } else { Status::Fail },
    };
    Report { records, summary }
}

fn resolve(program: &Program, target: &Target) -> Result<Resolved, String> {
    Ok(match target {
        Target::Name(id) => match &program.objects[&id.text] {
            Object::Lattice { lattice, pos } => Resolved::Lattice(lattice.clone(), pos.clone()),
            Object::Cover { cover, pos } => Resolved::Cover(cover.clone(), pos.clone()),
        },
        Target::Chain(n) => {
            let l = chain_lattice(*n as usize).map_err(|e| e.to_string())?;
            let pos = Positivity::nonzero(&l);
            Resolved::Lattice(l, Some(pos))
        }
        Target::Boolean(k) => {
            let l = boolean_lattice(*k as usize).map_err(|e| e.to_string())?;
            let pos = Positivity::nonzero(&l);
            Resolved::Lattice(l, Some(pos))
        }
        Target::Discrete(points) => {
            let points: Vec<&str> = points.iter().map(|p| p.text.as_str()).collect();
            let d = discrete_cover(&points).map_err(|e| e.to_string())?;
            let cover = d.cover.renamed(discrete_names(&points)).map_err(|e| e.to_string())?;
            Resolved::Cover(cover, Some(d.pos))
        }
        Target::Cantor => Resolved::Strings(cantor_cover(), true),
        Target::Baire => Resolved::Strings(baire_cover(), false),
    })
}

fn names_of(l: &DistributiveLattice, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| l.name(x).to_string()).collect()
}

fn cover_names(c: &FiniteCover, s: Subset) -> Vec<String> {
    s.iter().map(|x| c.name(x).to_string()).collect()
}

fn execute(c: &Command, r: Resolved, options: &Options) -> Outcome {
    match (&c.kind, r) {
        (CommandKind::Check(kind), r) => check(*kind, r, options),
        (CommandKind::Booleanize, Resolved::Lattice(l, pos)) => match pos {
            Some(pos) => booleanize(&l, &pos),
            None => error("booleanize needs a pos list"),
        },
        (CommandKind::Congruences, Resolved::Lattice(l, _)) => congruences(&l),
        (CommandKind::Envelope, Resolved::Lattice(l, _)) => envelope(&l, options),
        (CommandKind::Derive { goal, cover, budget }, r) => {
            let budget = budget.unwrap_or(options.budget);
            let goal = goal.text.as_str();
            let cover: Vec<&str> = cover.iter().map(|i| i.text.as_str()).collect();
            match r {
                Resolved::Strings(p, binary) => {
                    let parse = |s: &str| Word::parse_name(s, binary).expect("resolved at load");
                    let u: Vec<Word> = cover.iter().map(|s| parse(s)).collect();
                    derive(&p, parse(goal), u, budget, |w| w.name(binary))
                }
                Resolved::Cover(fc, _) => finite_derive(&fc, goal, &cover, budget),
                Resolved::Lattice(l, _) => match Envelope::new(&l) {
                    Ok(env) => finite_derive(&env.cover, goal, &cover, budget),
                    Err(e) => error(e.to_string()),
                },
            }
        }
        (kind, _) => {
            let what = match kind {
                CommandKind::Booleanize => "booleanize",
                CommandKind::Congruences => "congruences",
                _ => "envelope",
            };
            error(format!("{what} needs a lattice"))
        }
    }
}

fn finite_derive(fc: &FiniteCover, goal: &str, cover: &[&str], budget: u64) -> Outcome {
    let lookup = |s: &str| fc.index_of(s).ok_or_else(|| format!("`{s}` is not a base element"));
    let goal = match lookup(goal) {
        Ok(g) => g,
        Err(e) => return error(e),
    };
    let u = match cover.iter().map(|s| lookup(s)).collect::<Result<Vec<_>, _>>() {
        Ok(u) => u,
        Err(e) => return error(e),
    };
    derive(&fc.presentation(), goal, u, budget, |&x| fc.name(x).to_string())
}

fn derive<T, N>(p: &CoverPresentation<T>, goal: T, u: Vec<T>, budget: u64, name: N) -> Outcome
where
    T: sigmaframe::enumeration::Carrier + Eq + std::hash::Hash,
    N: Fn(&T) -> String,
{
    let cover_names: Vec<String> = u.iter().map(&name).collect();
    let found = p.derive_traced(&goal, &Enumeration::from_vec(u), budget);
    let goal_name = name(&goal);
    let claim = format!("{goal_name} <| {{{}}}", cover_names.join(","));
    match found {
        Some(d) => {
            let mut trace = Vec::new();
            flatten(&d.derivation, 0, &name, &mut trace);
            outcome(
                Status::Pass,
                format!("{claim} confirmed after {} step{}", d.steps, if d.steps == 1 { "" } else { "s" }),
                Details::Derive {
                    goal: goal_name,
                    cover: cover_names,
                    budget,
                    outcome: "confirmed",
                    steps: Some(d.steps),
                    trace,
                },
            )
        }
        None => outcome(
            Status::Fail,
            format!("{claim} unknown within budget {budget}"),
            Details::Derive {
                goal: goal_name,
                cover: cover_names,
                budget,
                outcome: "unknown",
                steps: None,
                trace: Vec::new(),
            },
        ),
    }
}

fn flatten<T: Clone, N: Fn(&T) -> String>(d: &Derivation<T>, depth: usize, name: &N, out: &mut Vec<TraceStep>) {
    match d {
        Derivation::Member { goal, element, .. } => out.push(TraceStep {
            depth,
            goal: name(goal),
            rule: "member",
            via: name(element),
        }),
        Derivation::Family { goal, site, .. } => out.push(TraceStep {
            depth,
            goal: name(goal),
            rule: "family",
            via: name(site),
        }),
        Derivation::Axiom { goal, site, children, .. } => {
            out.push(TraceStep {
                depth,
                goal: name(goal),
                rule: "axiom",
                via: name(site),
            });
            for c in children {
                flatten(c, depth + 1, name, out);
            }
        }
    }
}

fn overt_witness(l: &DistributiveLattice, v: &OvertViolation) -> Witness {
    match v {
        OvertViolation::Shape { .. } => Witness {
            law: "shape",
            elements: Vec::new(),
        },
        OvertViolation::BottomPositive => Witness {
            law: "bottom-positive",
            elements: names_of(l, [l.bottom()]),
        },
        OvertViolation::NotUpwardClosed { a, b } => Witness {
            law: "upward-closure",
            elements: names_of(l, [*a, *b]),
        },
        OvertViolation::JoinNotSplit { family } => Witness {
            law: "join-splitting",
            elements: names_of(l, family.iter().copied()),
        },
        OvertViolation::NonzeroNotPositive { a } => Witness {
            law: "positivity",
            elements: names_of(l, [*a]),
        },
    }
}

fn check(kind: CheckKind, r: Resolved, options: &Options) -> Outcome {
    let details = |elements: usize, witness: Option<Witness>| Details::Check {
        check: kind.keyword(),
        elements,
        witness,
    };
    match (kind, r) {
        (CheckKind::Lattice, Resolved::Lattice(l, _)) => outcome(
            Status::Pass,
            format!("distributive lattice with {} elements", l.len()),
            details(l.len(), None),
        ),
        (CheckKind::Lattice, Resolved::Cover(c, _)) => match c.frame(options.max_base) {
            Ok(f) => outcome(
                Status::Pass,
                format!("presented frame is a distributive lattice with {} elements", f.lattice.len()),
                details(f.lattice.len(), None),
            ),
            Err(e) => error(e.to_string()),
        },
        (CheckKind::Overt, Resolved::Lattice(l, pos)) => {
            let Some(pos) = pos else { return error("overt check needs a pos list") };
            match check_overt(&l, &pos) {
                Ok(()) => outcome(Status::Pass, "pos is overt", details(l.len(), None)),
                Err(v) => outcome(Status::Fail, format!("pos is not overt: {}", v), details(l.len(), Some(overt_witness(&l, &v)))),
            }
        }
        (CheckKind::Overlap, Resolved::Lattice(l, pos)) => {
            let Some(pos) = pos else { return error("overlap check needs a pos list") };
            match is_sigma_overlap_algebra(&l, &pos) {
                Ok(None) => outcome(Status::Pass, "σ-overlap algebra", details(l.len(), None)),
                Ok(Some((x, y))) => outcome(
                    Status::Fail,
                    format!("not a σ-overlap algebra: {} and {} overlap alike but {0} ≰ {1}", l.name(x), l.name(y)),
                    details(
                        l.len(),
                        Some(Witness {
                            law: "overlap",
                            elements: names_of(&l, [x, y]),
                        }),
                    ),
                ),
                Err(e) => error(e.to_string()),
            }
        }
        (CheckKind::Overlap, Resolved::Cover(c, pos)) => {
            let Some(pos) = pos else { return error("overlap check needs a pos list") };
            match is_overlap_cover(&c, &pos) {
                Ok(None) => outcome(Status::Pass, "overlap cover", details(c.len(), None)),
                Ok(Some((a, u))) => {
                    let mut elements = vec![c.name(a).to_string()];
                    elements.extend(cover_names(&c, u));
                    outcome(
                        Status::Fail,
                        format!("not an overlap cover: {} overlaps like {} but is not covered by it", c.name(a), c.describe(u)),
                        details(c.len(), Some(Witness { law: "overlap", elements })),
                    )
                }
                Err(v) => {
                    let (law, elements) = match v {
                        CoverPosViolation::Shape { .. } => ("shape", Vec::new()),
                        CoverPosViolation::NotSplit { a, cover } => {
                            let mut e = vec![c.name(a).to_string()];
                            e.extend(cover_names(&c, cover));
                            ("join-splitting", e)
                        }
                        CoverPosViolation::NotPositiveNotEmpty { a } => ("positivity", vec![c.name(a).to_string()]),
                    };
                    outcome(
                        Status::Fail,
                        format!("pos is not overt on the cover ({law})"),
                        details(c.len(), Some(Witness { law, elements })),
                    )
                }
            }
        }
        (CheckKind::FormalCover, Resolved::Cover(c, _)) => match c.check_formal_cover_axioms() {
            Ok(()) => outcome(Status::Pass, "formal cover laws hold", details(c.len(), None)),
            Err(v) => {
                let (law, elements) = match v {
                    CoverLawViolation::Top { a } => ("top", vec![c.name(a).to_string()]),
                    CoverLawViolation::Stability { a, b, cover } => {
                        let mut e = vec![c.name(a).to_string(), c.name(b).to_string()];
                        e.extend(cover_names(&c, cover));
                        ("stability", e)
                    }
                };
                outcome(
                    Status::Fail,
                    format!("formal cover law fails ({law})"),
                    details(c.len(), Some(Witness { law, elements })),
                )
            }
        },
        (CheckKind::FormalCover, Resolved::Lattice(l, _)) => match Envelope::new(&l) {
            Ok(env) => check(CheckKind::FormalCover, Resolved::Cover(env.cover, None), options),
            Err(e) => error(e.to_string()),
        },
        (CheckKind::Overt, Resolved::Cover(..)) => error("overt check applies to lattices; use `check NAME overlap` on covers"),
        (_, Resolved::Strings(..)) => error("infinite presentations support only derive"),
    }
}

fn class_names(l: &DistributiveLattice, c: &Congruence) -> Vec<Vec<String>> {
    c.classes().into_iter().map(|k| names_of(l, k)).collect()
}

fn booleanize(l: &DistributiveLattice, pos: &Positivity) -> Outcome {
    let c = match bool_congruence(l, pos) {
        Ok(c) => c,
        Err(e) => return error(e.to_string()),
    };
    let q = match quotient(l, &c, pos) {
        Ok(q) => q,
        Err(e) => return error(e.to_string()),
    };
    let ql = &q.lattice;
    let leq = ql
        .elements()
        .flat_map(|a| ql.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && ql.leq(a, b))
        .map(|(a, b)| [ql.name(a).to_string(), ql.name(b).to_string()])
        .collect();
    let already = c == Congruence::identity(l.len());
    let message = if already {
        "identity congruence: already a σ-overlap algebra".to_string()
    } else {
        format!("{} classes", c.class_count())
    };
    outcome(
        Status::Pass,
        message,
        Details::Booleanize {
            classes: class_names(l, &c),
            quotient: QuotientTable {
                elements: ql.names().to_vec(),
                leq,
                pos: names_of(ql, q.pos.positive()),
            },
            already_overlap_algebra: already,
        },
    )
}

fn congruences(l: &DistributiveLattice) -> Outcome {
    match enumerate_congruences(l) {
        Ok(all) => outcome(
            Status::Pass,
            format!("{} congruences", all.len()),
            Details::Congruences {
                count: all.len(),
                congruences: all.iter().map(|c| class_names(l, c)).collect(),
            },
        ),
        Err(e) => error(e.to_string()),
    }
}

fn envelope(l: &DistributiveLattice, options: &Options) -> Outcome {
    let env = match Envelope::new(l) {
        Ok(env) => env,
        Err(e) => return error(e.to_string()),
    };
    let frame = match env.cover.frame(options.max_base) {
        Ok(f) => f,
        Err(e) => return error(e.to_string()),
    };
    let isomorphic = find_isomorphism(&frame.lattice, l).is_some();
    let embedding = l
        .elements()
        .map(|a| Embedding {
            element: l.name(a).to_string(),
            saturation: cover_names(&env.cover, env.embedding[a]),
        })
        .collect();
    let status = if isomorphic { Status::Pass } else { Status::Fail };
    outcome(
        status,
        format!(
            "envelope frame has {} elements, {}isomorphic to the lattice",
            frame.lattice.len(),
            if isomorphic { "" } else { "not " }
        ),
        Details::Envelope {
            base: env.cover.len(),
            frame: frame.lattice.len(),
            isomorphic,
            embedding,
        },
    )
}
