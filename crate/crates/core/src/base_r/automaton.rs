use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use super::word::{check_base, DigitWord, STAR};
use crate::error::{Error, Result};

/// An input letter: the star or one digit per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Star,
    Digits(Vec<u8>),
}

impl Symbol {
    pub fn parse(s: &str, n: usize, r: u32) -> Result<Symbol> {
        if s == "*" || s == STAR.to_string() {
            return Ok(Symbol::Star);
        }
        let ds = s
            .chars()
            .map(|c| c.to_digit(r).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::parse(0, format!("symbol '{s}' has a non base-{r} digit")))?;
        if ds.len() != n {
            return Err(Error::parse(0, format!("symbol '{s}' has {} components, expected {n}", ds.len())));
        }
        Ok(Symbol::Digits(ds))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Star => write!(f, "*"),
            Symbol::Digits(ds) => {
                for &d in ds {
                    write!(f, "{}", std::char::from_digit(d as u32, 36).expect("digit < 36"))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionSpec {
    pub from: String,
    pub symbol: String,
    pub to: String,
}

/// JSON document form of an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RvaSpec {
    pub n: usize,
    pub r: u32,
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<TransitionSpec>,
    pub accepting_sccs: Vec<Vec<String>>,
}

/// Deterministic weak Büchi automaton over `Σ_r^n ∪ {⋆}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RvaSpec", into = "RvaSpec")]
pub struct Rva {
    spec: RvaSpec,
    initial: usize,
    delta: HashMap<(usize, Symbol), usize>,
    accepting: Vec<BTreeSet<usize>>,
}

impl TryFrom<RvaSpec> for Rva {
    type Error = Error;

    fn try_from(spec: RvaSpec) -> Result<Rva> {
        check_base(spec.r)?;
        if spec.n == 0 {
            return Err(Error::Precondition("automaton arity must be positive".into()));
        }
        let mut ids = HashMap::new();
        for (k, s) in spec.states.iter().enumerate() {
            if ids.insert(s.as_str(), k).is_some() {
                return Err(Error::parse(0, format!("duplicate state '{s}'")));
            }
        }
        let id = |s: &str| ids.get(s).copied().ok_or_else(|| Error::parse(0, format!("unknown state '{s}'")));
        let initial = id(&spec.initial)?;
        let mut delta = HashMap::new();
        let mut graph = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = spec.states.iter().map(|_| graph.add_node(())).collect();
        for t in &spec.transitions {
            let (from, to) = (id(&t.from)?, id(&t.to)?);
            let sym = Symbol::parse(&t.symbol, spec.n, spec.r)?;
            if delta.insert((from, sym), to).is_some() {
                return Err(Error::parse(0, format!("non-deterministic transition from '{}' on '{}'", t.from, t.symbol)));
            }
            graph.add_edge(nodes[from], nodes[to], ());
        }
        let sccs: Vec<BTreeSet<usize>> = tarjan_scc(&graph)
            .into_iter()
            .map(|c| c.into_iter().map(|n| n.index()).collect())
            .collect();
        let mut accepting = Vec::new();
        for group in &spec.accepting_sccs {
            let set = group.iter().map(|s| id(s)).collect::<Result<BTreeSet<_>>>()?;
            if !sccs.contains(&set) {
                return Err(Error::Invariant(format!("accepting set {group:?} is not a strongly connected component")));
            }
            accepting.push(set);
        }
        Ok(Rva { spec, initial, delta, accepting })
    }
}

impl From<Rva> for RvaSpec {
    fn from(a: Rva) -> RvaSpec {
        a.spec
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub accepted: bool,
    /// States visited infinitely often on the lasso.
    pub loop_states: Vec<String>,
    /// Set when the run hit an undefined transition (counted as a reject).
    pub diagnostic: Option<String>,
}

impl Rva {
    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn r(&self) -> u32 {
        self.spec.r
    }

    pub fn spec(&self) -> &RvaSpec {
        &self.spec
    }

    pub fn from_json(text: &str) -> Result<Rva> {
        Ok(serde_json::from_str(text)?)
    }

    fn step(&self, q: usize, sym: &Symbol) -> std::result::Result<usize, String> {
        self.delta
            .get(&(q, sym.clone()))
            .copied()
            .ok_or_else(|| format!("missing transition from '{}' on '{sym}'", self.spec.states[q]))
    }

    /// Runs on the synchronized word and accepts iff the states repeated
    /// forever lie in an accepting component.
    pub fn membership(&self, words: &[DigitWord]) -> Result<Membership> {
        let (prefix, period) = synchronize(words, self.spec.n, self.spec.r)?;
        let reject = |msg: String| Membership { accepted: false, loop_states: vec![], diagnostic: Some(msg) };
        let mut q = self.initial;
        for sym in &prefix {
            match self.step(q, sym) {
                Ok(next) => q = next,
                Err(msg) => return Ok(reject(msg)),
            }
        }
        // Iterate the period until a period-start state repeats.
        let mut first_seen: HashMap<usize, usize> = HashMap::new();
        let mut visited: Vec<Vec<usize>> = Vec::new();
        loop {
            if let Some(&start) = first_seen.get(&q) {
                let cycle: BTreeSet<usize> = visited[start..].iter().flatten().copied().collect();
                let accepted = self.accepting.iter().any(|acc| cycle.is_subset(acc));
                let loop_states = cycle.iter().map(|&k| self.spec.states[k].clone()).collect();
                return Ok(Membership { accepted, loop_states, diagnostic: None });
            }
            first_seen.insert(q, visited.len());
            let mut seen = Vec::with_capacity(period.len());
            for sym in &period {
                match self.step(q, sym) {
                    Ok(next) => q = next,
                    Err(msg) => return Ok(reject(msg)),
                }
                seen.push(q);
            }
            visited.push(seen);
        }
    }
}

/// `rva_membership` as a free function.
pub fn rva_membership(a: &Rva, words: &[DigitWord]) -> Result<Membership> {
    a.membership(words)
}

/// Aligns the components on a common star position and fractional length,
/// returning the finite prefix (star included) and the joint period.
fn synchronize(words: &[DigitWord], n: usize, r: u32) -> Result<(Vec<Symbol>, Vec<Symbol>)> {
    if words.len() != n {
        return Err(Error::Precondition(format!("expected {n} words, got {}", words.len())));
    }
    if let Some(w) = words.iter().find(|w| w.r != r) {
        return Err(Error::Precondition(format!("word {w} is base {}, automaton is base {r}", w.r)));
    }
    let p = words.iter().map(DigitWord::p).max().expect("n > 0");
    let len = words.iter().map(|w| w.frac_digits.len()).max().expect("n > 0");
    let ws: Vec<DigitWord> = words.iter().map(|w| w.widened(p).unrolled(len)).collect();
    let column = |m: i32| Symbol::Digits(ws.iter().map(|w| w.digit_at(m)).collect());
    let mut prefix: Vec<Symbol> = (0..=p).rev().map(column).collect();
    prefix.push(Symbol::Star);
    prefix.extend((1..=len as i32).map(|k| column(-k)));
    let joint = ws
        .iter()
        .map(|w| w.period.as_ref().map_or(1, Vec::len))
        .fold(1, |a, b| a.lcm(&b));
    let period = (1..=joint as i32).map(|t| column(-(len as i32) - t)).collect();
    Ok((prefix, period))
}

fn digit_symbols(r: u32, n: usize) -> Vec<Vec<u8>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (0..r as u8).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect()
    })
}

fn build(n: usize, r: u32, states: &[&str], next: impl Fn(&str, &Symbol) -> &'static str, accepting: &[&str]) -> Rva {
    let mut transitions = Vec::new();
    let mut syms: Vec<Symbol> = digit_symbols(r, n).into_iter().map(Symbol::Digits).collect();
    syms.push(Symbol::Star);
    for &s in states {
        for sym in &syms {
            transitions.push(TransitionSpec { from: s.into(), symbol: sym.to_string(), to: next(s, sym).into() });
        }
    }
    let spec = RvaSpec {
        n,
        r,
        states: states.iter().map(|s| s.to_string()).collect(),
        initial: states[0].into(),
        transitions,
        accepting_sccs: vec![accepting.iter().map(|s| s.to_string()).collect()],
    };
    Rva::try_from(spec).expect("built-in automaton is valid")
}

/// Accepts pairs of identical words.
pub fn equality_automaton(r: u32) -> Rva {
    build(
        2,
        r,
        &["eq", "dead"],
        |s, sym| match (s, sym) {
            ("eq", Symbol::Star) => "eq",
            ("eq", Symbol::Digits(d)) if d[0] == d[1] => "eq",
            _ => "dead",
        },
        &["eq"],
    )
}

/// Accepts `(x, y)` when the word of `x` precedes that of `y`: the first
/// differing digit decides, with the order reversed at the leading (sign)
/// position. On canonical words this is the real order `x < y`.
pub fn order_automaton(r: u32) -> Rva {
    build(
        2,
        r,
        &["start", "eq", "lt", "gt"],
        |s, sym| match (s, sym) {
            ("lt", _) => "lt",
            ("gt", _) => "gt",
            (_, Symbol::Star) => "eq",
            ("start", Symbol::Digits(d)) if d[0] > d[1] => "lt",
            ("start", Symbol::Digits(d)) if d[0] < d[1] => "gt",
            ("eq", Symbol::Digits(d)) if d[0] < d[1] => "lt",
            ("eq", Symbol::Digits(d)) if d[0] > d[1] => "gt",
            _ => "eq",
        },
        &["lt"],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_r::{encode, parse_word};

    fn w(s: &str) -> DigitWord {
        parse_word(s, 2).unwrap()
    }

    #[test]
    fn equality_examples() {
        let a = equality_automaton(2);
        assert!(a.membership(&[w("0⋆10"), w("0⋆10")]).unwrap().accepted);
        assert!(!a.membership(&[w("0⋆10"), w("0⋆01")]).unwrap().accepted);
        assert!(a.membership(&[w("0⋆(01)"), w("00⋆0101(01)")]).unwrap().accepted);
    }

    #[test]
    fn order_examples() {
        let a = order_automaton(2);
        let q = |x: f64| encode(x, 2, 8).unwrap().remove(0);
        assert!(a.membership(&[q(0.25), q(0.5)]).unwrap().accepted);
        assert!(!a.membership(&[q(0.5), q(0.25)]).unwrap().accepted);
        assert!(a.membership(&[q(-1.5), q(0.25)]).unwrap().accepted);
        assert!(a.membership(&[q(-1.5), q(-0.25)]).unwrap().accepted);
        assert!(!a.membership(&[q(0.5), q(0.5)]).unwrap().accepted);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let a = equality_automaton(2);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(Rva::from_json(&text).unwrap(), a);
        let mut bad = a.spec().clone();
        bad.accepting_sccs = vec![vec!["eq".into(), "dead".into()]];
        assert!(matches!(Rva::try_from(bad), Err(Error::Invariant(_))));
        let mut dup = a.spec().clone();
        dup.transitions.push(dup.transitions[0].clone());
        assert!(Rva::try_from(dup).is_err());
    }

    #[test]
    fn missing_transition_rejects_with_diagnostic() {
        let mut spec = equality_automaton(2).spec().clone();
        spec.transitions.retain(|t| t.symbol != "*");
        let a = Rva::try_from(spec).unwrap();
        let m = a.membership(&[w("0⋆1"), w("0⋆1")]).unwrap();
        assert!(!m.accepted && m.diagnostic.is_some());
    }
}
