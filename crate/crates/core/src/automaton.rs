//! Binary invertible Mealy automata.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::group::{act, GroupWord, TreeVertex};
use crate::{Error, Result};

/// Name of the identity state in [`img_automaton`].
pub const IDENTITY_STATE: &str = "1";

/// A Mealy automaton over the alphabet `{0, 1}`.
///
/// Serialises as `{"states": [...], "transition": {state: [next₀, next₁]},
/// "output": {state: [out₀, out₁]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AutomatonJson", into = "AutomatonJson")]
pub struct MealyAutomaton {
    states: Vec<String>,
    next: Vec<[usize; 2]>,
    output: Vec<[u8; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonJson {
    states: Vec<String>,
    transition: BTreeMap<String, [String; 2]>,
    output: BTreeMap<String, [u8; 2]>,
}

impl TryFrom<AutomatonJson> for MealyAutomaton {
    type Error = Error;

    fn try_from(raw: AutomatonJson) -> Result<Self> {
        MealyAutomaton::new(raw.states, raw.transition, raw.output)
    }
}

impl From<MealyAutomaton> for AutomatonJson {
    fn from(m: MealyAutomaton) -> Self {
        let transition = m
            .states
            .iter()
            .zip(&m.next)
            .map(|(s, n)| (s.clone(), [m.states[n[0]].clone(), m.states[n[1]].clone()]))
            .collect();
        let output = m.states.iter().cloned().zip(m.output.iter().copied()).collect();
        AutomatonJson { states: m.states, transition, output }
    }
}

impl MealyAutomaton {
    /// Builds an automaton from named tables. Both tables must be total on the
    /// listed states, and outputs must be bits.
    pub fn new(
        states: Vec<String>,
        transition: BTreeMap<String, [String; 2]>,
        output: BTreeMap<String, [u8; 2]>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        let index: BTreeMap<&str, usize> = states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != states.len() {
            return Err(Error::InvalidAutomaton("duplicate state names".into()));
        }
        for key in transition.keys().chain(output.keys()) {
            if !index.contains_key(key.as_str()) {
                return Err(Error::InvalidAutomaton(format!("unknown state {key:?}")));
            }
        }
        let mut next = Vec::with_capacity(states.len());
        let mut outs = Vec::with_capacity(states.len());
        for s in &states {
            let t = transition
                .get(s)
                .ok_or_else(|| Error::InvalidAutomaton(format!("no transition for state {s:?}")))?;
            let lookup = |name: &String| {
                index
                    .get(name.as_str())
                    .copied()
                    .ok_or_else(|| Error::InvalidAutomaton(format!("transition to unknown state {name:?}")))
            };
            next.push([lookup(&t[0])?, lookup(&t[1])?]);
            let o = *output.get(s).ok_or_else(|| Error::InvalidAutomaton(format!("no output for state {s:?}")))?;
            if o.iter().any(|&b| b > 1) {
                return Err(Error::InvalidAutomaton(format!("output of state {s:?} is not a bit")));
            }
            outs.push(o);
        }
        Ok(MealyAutomaton { states, next, output: outs })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidAutomaton(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("automaton serialises")
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state(&self, name: &str) -> Result<AutomatonState<'_>> {
        let id = self
            .states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::InvalidAutomaton(format!("no state named {name:?}")))?;
        Ok(AutomatonState { automaton: self, id })
    }

    /// `(next state, output bit)` for a state index and input bit.
    pub fn step(&self, state: usize, bit: u8) -> (usize, u8) {
        (self.next[state][bit as usize], self.output[state][bit as usize])
    }

    /// Every state's output map is a bijection of `{0, 1}`.
    pub fn is_invertible(&self) -> bool {
        self.output.iter().all(|o| o[0] != o[1])
    }
}

/// A state of a particular automaton.
#[derive(Debug, Clone, Copy)]
pub struct AutomatonState<'a> {
    automaton: &'a MealyAutomaton,
    id: usize,
}

impl AutomatonState<'_> {
    pub fn name(&self) -> &str {
        &self.automaton.states[self.id]
    }

    /// Sequential transduction of `v` starting from this state.
    pub fn act(&self, v: &TreeVertex) -> Result<TreeVertex> {
        if !self.automaton.is_invertible() {
            return Err(Error::InvalidAutomaton("automaton is not invertible".into()));
        }
        let mut q = self.id;
        let mut bits = Vec::with_capacity(v.level());
        for &x in v.bits() {
            let (next, out) = self.automaton.step(q, x);
            bits.push(out);
            q = next;
        }
        TreeVertex::from_bits(bits)
    }
}

pub fn automaton_act(s: AutomatonState<'_>, v: &TreeVertex) -> Result<TreeVertex> {
    s.act(v)
}

pub fn is_invertible(m: &MealyAutomaton) -> bool {
    m.is_invertible()
}

/// The four-state automaton generating the group:
/// `a = (1, 1)σ`, `b = (a, c)`, `c = (b, 1)`.
pub fn img_automaton() -> MealyAutomaton {
    let table: [(&str, [&str; 2], [u8; 2]); 4] = [
        (IDENTITY_STATE, ["1", "1"], [0, 1]),
        ("a", ["1", "1"], [1, 0]),
        ("b", ["a", "c"], [0, 1]),
        ("c", ["b", "1"], [0, 1]),
    ];
    let states = table.iter().map(|(s, _, _)| s.to_string()).collect();
    let transition = table.iter().map(|(s, t, _)| (s.to_string(), t.map(String::from))).collect();
    let output = table.iter().map(|(s, _, o)| (s.to_string(), *o)).collect();
    MealyAutomaton::new(states, transition, output).expect("static table is total")
}

/// The one-state automaton fixing every vertex.
pub fn identity_automaton() -> MealyAutomaton {
    let transition = BTreeMap::from([(IDENTITY_STATE.to_string(), ["1".to_string(), "1".to_string()])]);
    let output = BTreeMap::from([(IDENTITY_STATE.to_string(), [0u8, 1])]);
    MealyAutomaton::new(vec![IDENTITY_STATE.to_string()], transition, output).expect("static table is total")
}

/// First vertex of length `≤ max_level` where a state named after a
/// generator (or the identity state `1`) disagrees with the wreath recursion.
/// States with other names are skipped.
pub fn recursion_mismatch(m: &MealyAutomaton, max_level: usize) -> Result<Option<(String, TreeVertex)>> {
    for name in m.states() {
        let g = if name == IDENTITY_STATE {
            GroupWord::identity()
        } else {
            match GroupWord::parse(name) {
                Ok(w) if w.len() == 1 => w,
                _ => continue,
            }
        };
        let state = m.state(name)?;
        for level in 0..=max_level {
            for v in TreeVertex::level_vertices(level) {
                if state.act(&v)? != act(&g, &v) {
                    return Ok(Some((name.clone(), v)));
                }
            }
        }
    }
    Ok(None)
}

/// Moore diagram as a DOT digraph: one node per state, one edge per
/// `(state, input)` labelled `input|output`.
pub fn moore_dot(m: &MealyAutomaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    for (i, s) in m.states.iter().enumerate() {
        let _ = writeln!(out, "  q{i} [label=\"{s}\"];");
    }
    for i in 0..m.states.len() {
        for bit in 0..2u8 {
            let (next, o) = m.step(i, bit);
            let _ = writeln!(out, "  q{i} -> q{next} [label=\"{bit}|{o}\"];");
        }
    }
    out.push_str("}\n");
    out
}
