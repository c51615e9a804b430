//! Scenario files: a ring with weights, relations, a graded Lie algebra and its
//! action table, plus run options.
//!
//! ```text
//! [ring]
//! x : 0
//! y : -1
//! order = weighted
//!
//! [relations]
//!
//! [lie]
//! 1 : xi
//!
//! [action]
//! xi . y = x
//!
//! [options]
//! degree_bound = 6
//! ```

use std::fmt::Write as _;

use nrgit_core::lie::{DerivationAction, GradedLieAlgebra, LieElement, Violation};
use nrgit_core::ring::{parse_polynomial, GradedRing, MonomialOrder, ParseError, Polynomial, PresentedAlgebra, Variable};
use nrgit_core::Rational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Semantic { line: Option<usize>, message: String },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Syntax { line, column, message: message.into() }
}

fn semantic(line: Option<usize>, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Semantic { line, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderName {
    /// `−λ`-weight first, then degrevlex.
    Weighted,
    DegRevLex,
    Lex,
}

impl OrderName {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "weighted" => Some(OrderName::Weighted),
            "degrevlex" => Some(OrderName::DegRevLex),
            "lex" => Some(OrderName::Lex),
            _ => None,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            OrderName::Weighted => "weighted",
            OrderName::DegRevLex => "degrevlex",
            OrderName::Lex => "lex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Degree bound for slice, witness and J searches.
    pub degree_bound: u32,
    /// `|k|` bound for the free-algebra identities and coefficient tables.
    pub pbw_bound: u32,
    /// The scheme is declared reduced: WUU also looks for a witness point.
    pub reduced: bool,
    pub sample_count: usize,
    pub seed: u64,
    /// Degree of extra `J` members adjoined to each chart (0 = none).
    pub j_degree: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options { degree_bound: 8, pbw_bound: 4, reduced: true, sample_count: 20, seed: 0, j_degree: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub vars: Vec<Variable>,
    pub order: OrderName,
    pub relations: Vec<Polynomial>,
    pub levels: Vec<(i64, Vec<String>)>,
    /// Nonzero brackets `[a, b]` with `a < b` in basis order.
    pub brackets: Vec<(usize, usize, LieElement)>,
    /// `table[a][g] = ξ_a.g`.
    pub table: Vec<Vec<Polynomial>>,
    pub options: Options,
}

impl Scenario {
    pub fn ring(&self) -> GradedRing {
        let order = match self.order {
            OrderName::Weighted => GradedRing::weighted_order(&self.vars),
            OrderName::DegRevLex => MonomialOrder::DegRevLex,
            OrderName::Lex => MonomialOrder::Lex,
        };
        GradedRing::new(self.vars.clone(), order)
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn lie(&self) -> GradedLieAlgebra {
        GradedLieAlgebra::new(self.levels.clone(), self.brackets.clone()).expect("validated at load")
    }

    pub fn action(&self) -> DerivationAction {
        let alg = PresentedAlgebra::new(self.ring(), self.relations.clone());
        DerivationAction::new(alg, self.lie(), self.table.clone()).expect("validated at load")
    }

    /// Scenario for an existing action (weighted order unless the ring says otherwise).
    pub fn from_action(action: &DerivationAction, options: Options) -> Scenario {
        let alg = action.algebra();
        let order = match alg.ring().order() {
            MonomialOrder::DegRevLex => OrderName::DegRevLex,
            MonomialOrder::Lex => OrderName::Lex,
            _ => OrderName::Weighted,
        };
        let lie = action.lie();
        Scenario {
            vars: alg.ring().vars().to_vec(),
            order,
            relations: alg.relations().generators().to_vec(),
            levels: lie.levels(),
            brackets: lie.bracket_list().into_iter().filter(|(a, b, e)| a < b && !e.is_zero()).collect(),
            table: action.table(),
            options,
        }
    }

    /// Canonical text form; [`parse_scenario`] reads it back to an equal value.
    pub fn to_text(&self) -> String {
        let names = self.names();
        let lie_names: Vec<String> = self.levels.iter().flat_map(|(_, v)| v.iter().cloned()).collect();
        let mut s = String::from("[ring]\n");
        for v in &self.vars {
            let _ = writeln!(s, "{} : {}", v.name, v.weight);
        }
        let _ = writeln!(s, "order = {}", self.order.as_str());
        s.push_str("\n[relations]\n");
        for r in &self.relations {
            let _ = writeln!(s, "{}", r.display(&names));
        }
        s.push_str("\n[lie]\n");
        for (w, basis) in &self.levels {
            let _ = writeln!(s, "{w} : {}", basis.join(", "));
        }
        for (a, b, e) in &self.brackets {
            let _ = writeln!(s, "[{}, {}] = {}", lie_names[*a], lie_names[*b], show_lie(e, &lie_names));
        }
        s.push_str("\n[action]\n");
        for (a, row) in self.table.iter().enumerate() {
            for (g, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    let _ = writeln!(s, "{} . {} = {}", lie_names[a], names[g], p.display(&names));
                }
            }
        }
        let o = &self.options;
        s.push_str("\n[options]\n");
        let _ = writeln!(s, "degree_bound = {}", o.degree_bound);
        let _ = writeln!(s, "pbw_bound = {}", o.pbw_bound);
        let _ = writeln!(s, "reduced = {}", o.reduced);
        let _ = writeln!(s, "sample_count = {}", o.sample_count);
        let _ = writeln!(s, "seed = {}", o.seed);
        let _ = writeln!(s, "j_degree = {}", o.j_degree);
        s
    }
}

/// `2*Z - X` style rendering of a Lie element.
pub fn show_lie(e: &LieElement, names: &[String]) -> String {
    let n = e.0.len();
    let p = Polynomial::from_terms(
        n,
        e.0.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (nrgit_core::Monomial::var(n, i, 1), c.clone())),
    );
    p.display(names).to_string()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Ring,
    Relations,
    Lie,
    Action,
    Options,
}

/// A line with its 1-based number and the column where its content starts.
struct Line<'a> {
    no: usize,
    text: &'a str,
    col: usize,
}

fn poly_error(line: &Line, offset_in_line: usize, e: ParseError) -> ScenarioError {
    let at = match &e {
        ParseError::UnexpectedChar(_, o) | ParseError::Expected(_, o) => offset_in_line + o,
        _ => offset_in_line,
    };
    syntax(line.no, line.col + at, e.to_string())
}

fn parse_poly_at(line: &Line, start: usize, text: &str, names: &[String]) -> Result<Polynomial, ScenarioError> {
    let lead = text.len() - text.trim_start().len();
    parse_polynomial(text.trim(), names).map_err(|e| poly_error(line, start + lead, e))
}

/// Parses and fully validates a scenario.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut section = Section::None;
    let mut ring_lines = Vec::new();
    let mut rel_lines = Vec::new();
    let mut lie_lines = Vec::new();
    let mut action_lines = Vec::new();
    let mut option_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let line = Line { no: i + 1, text: trimmed, col: content.len() - content.trim_start().len() + 1 };
        let header = match trimmed {
            "[ring]" => Some(Section::Ring),
            "[relations]" => Some(Section::Relations),
            "[lie]" => Some(Section::Lie),
            "[action]" => Some(Section::Action),
            "[options]" => Some(Section::Options),
            _ => None,
        };
        if let Some(h) = header {
            section = h;
            continue;
        }
        match section {
            Section::None => return Err(syntax(line.no, line.col, "content before the first section header")),
            Section::Ring => ring_lines.push(line),
            Section::Relations => rel_lines.push(line),
            Section::Lie => lie_lines.push(line),
            Section::Action => action_lines.push(line),
            Section::Options => option_lines.push(line),
        }
    }

    let mut vars: Vec<Variable> = Vec::new();
    let mut order = OrderName::Weighted;
    for line in &ring_lines {
        if let Some((k, v)) = line.text.split_once('=') {
            if k.trim() != "order" {
                return Err(syntax(line.no, line.col, format!("unknown ring setting {:?}", k.trim())));
            }
            order = OrderName::parse(v.trim())
                .ok_or_else(|| syntax(line.no, line.col + k.len() + 1, format!("unknown order {:?}", v.trim())))?;
            continue;
        }
        let (name, w) = line.text.split_once(':').ok_or_else(|| syntax(line.no, line.col, "expected `name : weight`"))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
            return Err(syntax(line.no, line.col, format!("bad variable name {name:?}")));
        }
        let weight: i64 = w
            .trim()
            .parse()
            .map_err(|_| syntax(line.no, line.col + name.len() + 1, format!("bad weight {:?}", w.trim())))?;
        if vars.iter().any(|v| v.name == name) {
            return Err(semantic(Some(line.no), format!("variable {name} declared twice")));
        }
        if weight > 0 {
            return Err(semantic(Some(line.no), format!("variable {name} has positive weight {weight}; chart weights must be <= 0")));
        }
        vars.push(Variable { name: name.to_string(), weight });
    }
    let names: Vec<String> = vars.iter().map(|v| v.name.clone()).collect();

    let relations = rel_lines.iter().map(|l| parse_poly_at(l, 0, l.text, &names)).collect::<Result<Vec<_>, _>>()?;

    let mut levels: Vec<(i64, Vec<String>)> = Vec::new();
    let mut bracket_lines = Vec::new();
    for line in &lie_lines {
        if line.text.starts_with('[') {
            bracket_lines.push(line);
            continue;
        }
        let (w, basis) = line.text.split_once(':').ok_or_else(|| syntax(line.no, line.col, "expected `weight : names`"))?;
        let w: i64 = w.trim().parse().map_err(|_| syntax(line.no, line.col, format!("bad weight {:?}", w.trim())))?;
        let basis: Vec<String> = basis.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        if basis.is_empty() {
            return Err(syntax(line.no, line.col, "level without basis vectors"));
        }
        levels.push((w, basis));
    }
    let lie_names: Vec<String> = levels.iter().flat_map(|(_, v)| v.iter().cloned()).collect();
    for (i, n) in lie_names.iter().enumerate() {
        if lie_names[..i].contains(n) {
            return Err(semantic(None, format!("Lie basis vector {n} declared twice")));
        }
        if names.contains(n) {
            return Err(semantic(None, format!("{n} names both a variable and a Lie basis vector")));
        }
    }
    let dim = lie_names.len();
    let mut brackets: Vec<(usize, usize, LieElement)> = Vec::new();
    for line in bracket_lines {
        let close = line.text.find(']').ok_or_else(|| syntax(line.no, line.col, "expected `]`"))?;
        let (a, b) = line.text[1..close].split_once(',').ok_or_else(|| syntax(line.no, line.col + 1, "expected `[a, b]`"))?;
        let find = |n: &str| {
            lie_names.iter().position(|x| x == n.trim()).ok_or_else(|| semantic(Some(line.no), format!("unknown basis vector {:?}", n.trim())))
        };
        let (a, b) = (find(a)?, find(b)?);
        let rest = &line.text[close + 1..];
        let eq = rest.find('=').ok_or_else(|| syntax(line.no, line.col + close + 1, "expected `=`"))?;
        let rhs_start = close + 1 + eq + 1;
        let p = parse_poly_at(line, rhs_start, &line.text[rhs_start..], &lie_names)?;
        let mut e = LieElement::zero(dim);
        for (m, c) in p.terms() {
            let Some(k) = (0..dim).find(|&k| *m == nrgit_core::Monomial::var(dim, k, 1)) else {
                return Err(semantic(Some(line.no), "bracket value must be a linear combination of basis vectors"));
            };
            e.0[k] = c.clone();
        }
        let (a, b, e) = if a < b { (a, b, e) } else { (b, a, e.scale(&-Rational::from_integer(1.into()))) };
        if a == b {
            return Err(semantic(Some(line.no), "bracket of a vector with itself"));
        }
        if brackets.iter().any(|(x, y, _)| (*x, *y) == (a, b)) {
            return Err(semantic(Some(line.no), "bracket given twice"));
        }
        if !e.is_zero() {
            brackets.push((a, b, e));
        }
    }
    brackets.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    let lie = GradedLieAlgebra::new(levels.clone(), brackets.clone()).map_err(|e| semantic(None, e.to_string()))?;

    let n = vars.len();
    let mut table: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(n); n]; dim];
    let mut entry_line: Vec<Vec<Option<usize>>> = vec![vec![None; n]; dim];
    for line in &action_lines {
        let eq = line.text.find('=').ok_or_else(|| syntax(line.no, line.col, "expected `basis . variable = polynomial`"))?;
        let (a, g) = line.text[..eq].split_once('.').ok_or_else(|| syntax(line.no, line.col, "expected `basis . variable`"))?;
        let a = lie_names
            .iter()
            .position(|x| x == a.trim())
            .ok_or_else(|| semantic(Some(line.no), format!("unknown basis vector {:?}", a.trim())))?;
        let g = names
            .iter()
            .position(|x| x == g.trim())
            .ok_or_else(|| semantic(Some(line.no), format!("unknown variable {:?}", g.trim())))?;
        if entry_line[a][g].is_some() {
            return Err(semantic(Some(line.no), format!("{}.{} given twice", lie_names[a], names[g])));
        }
        table[a][g] = parse_poly_at(line, eq + 1, &line.text[eq + 1..], &names)?;
        entry_line[a][g] = Some(line.no);
    }

    let mut options = Options::default();
    for line in &option_lines {
        let (k, v) = line.text.split_once('=').ok_or_else(|| syntax(line.no, line.col, "expected `key = value`"))?;
        let (k, v) = (k.trim(), v.trim());
        let col = line.col + line.text.find('=').unwrap_or(0) + 1;
        let bad = || syntax(line.no, col, format!("bad value {v:?} for {k}"));
        match k {
            "degree_bound" => options.degree_bound = v.parse().map_err(|_| bad())?,
            "pbw_bound" => options.pbw_bound = v.parse().map_err(|_| bad())?,
            "reduced" => options.reduced = v.parse().map_err(|_| bad())?,
            "sample_count" => options.sample_count = v.parse().map_err(|_| bad())?,
            "seed" => options.seed = v.parse().map_err(|_| bad())?,
            "j_degree" => options.j_degree = v.parse().map_err(|_| bad())?,
            _ => return Err(syntax(line.no, line.col, format!("unknown option {k:?}"))),
        }
    }

    let scenario = Scenario { vars, order, relations, levels, brackets, table, options };
    let action = DerivationAction::new(PresentedAlgebra::new(scenario.ring(), scenario.relations.clone()), lie, scenario.table.clone())
        .map_err(|e| semantic(None, e.to_string()))?;
    if let Some(v) = action.validate().into_iter().next() {
        let line = match &v {
            Violation::Weight { basis, generator, .. } => {
                let a = lie_names.iter().position(|x| x == basis);
                let g = names.iter().position(|x| x == generator);
                a.zip(g).and_then(|(a, g)| entry_line[a][g])
            }
            Violation::RelationNotPreserved { relation, .. } | Violation::InhomogeneousRelation { relation } => {
                rel_lines.get(*relation).map(|l| l.no)
            }
            _ => None,
        };
        return Err(semantic(line, v.to_string()));
    }
    Ok(scenario)
}
