use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use ellab_core::criteria::{CheckVerdict, Geometry, Holds};
use ellab_core::nonlin::{self, parse_const, parse_expr, presets, ScalarNonlin, SystemNonlin};
use serde::Serialize;
use thiserror::Error;

use crate::args::{GeometryArg, NonlinArgs, PairKind};
use crate::json::{self, Node};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ellab_core::Error),
}

impl CliError {
    /// Core errors that describe a numerical failure rather than bad input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, CliError::Core(ellab_core::Error::Solver(_) | ellab_core::Error::Divergent(_)))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn holds_str(h: Holds) -> &'static str {
    match h {
        Holds::Yes => "yes",
        Holds::No => "no",
        Holds::Indeterminate => "indeterminate",
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Everything a command writes out.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Node,
    pub verdicts: Node,
    pub values: Node,
    pub witnesses: Vec<Node>,
    pub artifacts: Vec<String>,
    /// Exit with status 1 (checker fails or solver diverged).
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Node::map(),
            verdicts: Node::map(),
            values: Node::map(),
            witnesses: Vec::new(),
            artifacts: Vec::new(),
            failed: false,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Node>) {
        self.inputs.insert(key, v);
    }

    pub fn verdict(&mut self, key: &str, v: &str) {
        self.verdicts.insert(key, v);
    }

    pub fn value(&mut self, key: &str, v: impl Into<Node>) {
        self.values.insert(key, v);
    }

    pub fn value_of<T: Serialize + ?Sized>(&mut self, key: &str, v: &T) {
        self.values.insert(key, json::to_node(v));
    }

    /// Fold a checker verdict into the report; `No` marks the run as failed.
    pub fn absorb_verdict(&mut self, v: &CheckVerdict) {
        self.verdict("holds", holds_str(v.holds));
        for c in &v.conditions {
            self.verdict(&c.name, holds_str(c.holds));
        }
        self.value("theorem", json::to_node(&v.theorem));
        self.value("margin", v.margin);
        self.value_of("conditions", &v.conditions);
        self.value_of("values", &v.values);
        self.value_of("scan", &v.scan);
        self.value_of("warnings", &v.warnings);
        self.witnesses.extend(v.witnesses.iter().map(json::to_node));
        if v.holds == Holds::No {
            self.failed = true;
        }
    }

    pub fn to_node(&self, duration_ms: u64) -> Node {
        let mut n = Node::map();
        n.insert("command", self.command.as_str());
        n.insert("inputs", self.inputs.clone());
        n.insert("verdicts", self.verdicts.clone());
        n.insert("values", self.values.clone());
        n.insert("witnesses", Node::Seq(self.witnesses.clone()));
        n.insert("artifacts", Node::Seq(self.artifacts.iter().map(|a| Node::Str(a.clone())).collect()));
        n.insert("duration_ms", duration_ms);
        n.insert("version", env!("CARGO_PKG_VERSION"));
        n
    }
}

/// Shared state of one invocation: parameter bindings and the CSV directory.
pub struct Context {
    pub params: BTreeMap<String, f64>,
    pub csv_dir: Option<PathBuf>,
}

/// Split at commas outside parentheses.
pub fn split_list(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

pub fn geometry(g: GeometryArg) -> Geometry {
    match g {
        GeometryArg::Whole => Geometry::Whole,
        GeometryArg::Half => Geometry::Half,
    }
}

/// A resolved nonlinearity.
pub enum Nonlin {
    Scalar(ScalarNonlin),
    System(SystemNonlin),
}

impl Context {
    pub fn new(csv_dir: Option<PathBuf>) -> Self {
        Context { params: BTreeMap::new(), csv_dir }
    }

    /// Bind `--param` entries in order; later values may use earlier names.
    pub fn bind(&mut self, bindings: &[String]) -> CliResult<()> {
        for binding in bindings {
            let (name, value) = binding
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--param expects NAME=VALUE, got `{binding}`")))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(CliError::Usage(format!("invalid parameter name `{name}`")));
            }
            let x = parse_const(value, &self.params)?;
            self.params.insert(name.to_string(), x);
        }
        Ok(())
    }

    pub fn num(&self, text: &str) -> CliResult<f64> {
        Ok(parse_const(text, &self.params)?)
    }

    pub fn list(&self, text: &str) -> CliResult<Vec<f64>> {
        let v = split_list(text).into_iter().map(|t| self.num(t)).collect::<CliResult<Vec<f64>>>()?;
        if v.is_empty() {
            return Err(CliError::Usage(format!("empty list `{text}`")));
        }
        Ok(v)
    }

    /// Resolve the nonlinearity options, recording the texts and bound
    /// parameters in the report inputs.
    pub fn nonlin(&mut self, a: &NonlinArgs, rep: &mut Report) -> CliResult<Nonlin> {
        self.bind(&a.params)?;
        let given = [a.f.is_some(), a.preset.is_some(), a.potential.is_some(), a.f1.is_some()];
        if given.iter().filter(|g| **g).count() != 1 {
            return Err(CliError::Usage("give exactly one of --f, --preset, --potential, --f1/--f2".into()));
        }
        let mut inp = Node::map();
        let out = if let Some(f) = &a.f {
            inp.insert("f", f.as_str());
            Nonlin::Scalar(ScalarNonlin::parse(f, &self.params)?)
        } else if let Some(name) = &a.preset {
            let p = presets::find(name)?;
            inp.insert("preset", name.as_str());
            self.params = p.bind(&self.params);
            match p.template {
                presets::Template::Scalar { .. } => Nonlin::Scalar(p.scalar(&self.params)?),
                _ => Nonlin::System(p.system(&self.params)?),
            }
        } else if let Some(pot) = &a.potential {
            inp.insert("potential", pot.as_str());
            Nonlin::System(SystemNonlin::gradient(parse_expr(pot, &self.params)?)?)
        } else {
            let (t1, t2) = (a.f1.as_deref().unwrap_or_default(), a.f2.as_deref().unwrap_or_default());
            inp.insert("f1", t1);
            inp.insert("f2", t2);
            let (e1, e2) = (parse_expr(t1, &self.params)?, parse_expr(t2, &self.params)?);
            let sys = match a.pair {
                PairKind::LaneEmden => SystemNonlin::lane_emden(e1, e2)?,
                PairKind::Generic => SystemNonlin::generic(e1, e2)?,
                PairKind::Auto => match SystemNonlin::lane_emden(e1.clone(), e2.clone()) {
                    Ok(s) => s,
                    Err(_) => SystemNonlin::generic(e1, e2)?,
                },
            };
            inp.insert("pair", system_kind(&sys));
            Nonlin::System(sys)
        };
        let out = match (out, &a.diffusion) {
            (Nonlin::System(s), Some(d)) => {
                let d = self.list(d)?;
                inp.insert("diffusion", d.clone());
                Nonlin::System(s.with_diffusion(d)?)
            }
            (Nonlin::Scalar(_), Some(_)) => return Err(CliError::Usage("--diffusion applies to systems only".into())),
            (o, None) => o,
        };
        inp.insert("params", json::to_node(&self.params));
        rep.input("nonlinearity", inp);
        Ok(out)
    }

    pub fn scalar(&mut self, a: &NonlinArgs, rep: &mut Report) -> CliResult<ScalarNonlin> {
        match self.nonlin(a, rep)? {
            Nonlin::Scalar(f) => Ok(f),
            Nonlin::System(_) => Err(CliError::Usage("this command needs a scalar nonlinearity".into())),
        }
    }

    pub fn system(&mut self, a: &NonlinArgs, rep: &mut Report) -> CliResult<SystemNonlin> {
        match self.nonlin(a, rep)? {
            Nonlin::System(s) => Ok(s),
            Nonlin::Scalar(f) => Ok(SystemNonlin::scalar(&f)),
        }
    }

    fn csv_path(&self, name: &str) -> CliResult<Option<PathBuf>> {
        let Some(dir) = &self.csv_dir else { return Ok(None) };
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        Ok(Some(dir.join(name)))
    }

    /// Write a table as CSV (LF endings, `.` decimal point) when `--csv` is set.
    pub fn table(&self, rep: &mut Report, name: &str, header: &[&str], rows: &[Vec<f64>]) -> CliResult<()> {
        let Some(path) = self.csv_path(name)? else { return Ok(()) };
        let err = |e: csv::Error| io_error(&path, e);
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(&path).map_err(err)?;
        w.write_record(header).map_err(err)?;
        for row in rows {
            w.write_record(row.iter().map(|x| x.to_string())).map_err(err)?;
        }
        w.flush().map_err(|e| io_error(&path, e))?;
        rep.artifacts.push(path.display().to_string());
        Ok(())
    }

    pub fn profile(&self, rep: &mut Report, name: &str, prof: &ellab_core::radial::RadialProfile) -> CliResult<()> {
        let Some(path) = self.csv_path(name)? else { return Ok(()) };
        prof.save_csv(&path)?;
        rep.artifacts.push(path.display().to_string());
        Ok(())
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Core(ellab_core::Error::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn system_kind(s: &SystemNonlin) -> &'static str {
    match s.kind() {
        nonlin::SystemKind::Generic => "generic",
        nonlin::SystemKind::Gradient { .. } => "gradient",
        nonlin::SystemKind::LaneEmden => "lane-emden",
        nonlin::SystemKind::Proportional { .. } => "proportional",
    }
}

pub fn write_report(node: &Node, out: Option<&Path>) -> CliResult<()> {
    let text = json::render(node);
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| io_error(Path::new("<stdout>"), e))
        }
    }
}
