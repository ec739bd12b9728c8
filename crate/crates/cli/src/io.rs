//! Text and JSON forms of formulas, dnfs, model sets and verdicts.

use std::fs;

use beliefkit_core::postulate::Verdict;
use beliefkit_core::{DnfFormula, Formula, Literal, ModelSet, Term, Vocabulary};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Reads a formula argument. `@path` reads the file; text starting with `[`
/// is a dnf in JSON clause form; anything else is formula syntax.
pub fn read_formula(arg: &str) -> CliResult<Formula> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_string(),
            source,
        })?,
        None => arg.to_string(),
    };
    if text.trim_start().starts_with('[') {
        Ok(parse_dnf_json(&text)?.to_formula())
    } else {
        Ok(Formula::parse(&text)?)
    }
}

/// Comma or whitespace separated atom names.
pub fn split_names(text: &str) -> Vec<&str> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

fn term_json(t: &Term) -> Value {
    Value::Array(t.iter().map(|l| Value::String(l.to_string())).collect())
}

/// `[["a","!b"],["c"]]`: one array per term, literals in canonical order.
pub fn dnf_json(d: &DnfFormula) -> Value {
    Value::Array(d.terms().iter().map(term_json).collect())
}

pub fn parse_dnf_json(text: &str) -> CliResult<DnfFormula> {
    let bad = |what: &str| CliError::Usage(format!("malformed dnf JSON: {what}"));
    let value: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let terms = value.as_array().ok_or_else(|| bad("expected an array of terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let literals = term.as_array().ok_or_else(|| bad("expected an array of literals"))?;
        let mut t = Term::top();
        for l in literals {
            let s = l.as_str().ok_or_else(|| bad("literals must be strings"))?;
            t.insert(Literal::parse(s).ok_or_else(|| bad(&format!("bad literal `{s}`")))?);
        }
        out.push(t);
    }
    Ok(DnfFormula::new(out))
}

/// Model lines, each followed by a newline.
pub fn models_text(models: &ModelSet) -> String {
    let mut out = String::new();
    for line in models.lines() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Sorted array of sorted literal arrays, in the same order as the lines.
pub fn models_json(models: &ModelSet) -> Value {
    Value::Array(
        models
            .lines()
            .iter()
            .map(|line| Value::Array(line.split(' ').filter(|s| !s.is_empty()).map(|s| json!(s)).collect()))
            .collect(),
    )
}

pub fn parse_models_text(vocab: &Vocabulary, text: &str) -> CliResult<ModelSet> {
    Ok(ModelSet::parse_lines(
        vocab,
        text.lines().filter(|l| !l.trim().is_empty()),
    )?)
}

pub fn verdict_json(v: &Verdict) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        let mut obj = serde_json::Map::new();
        for (role, f) in &w.formulas {
            obj.insert((*role).to_string(), json!(f.render()));
        }
        obj.insert(
            "model".to_string(),
            match &w.model {
                Some(m) => json!(m.to_string()),
                None => Value::Null,
            },
        );
        Value::Object(obj)
    });
    json!({
        "postulate": v.postulate.name(),
        "operator": v.operator.name(),
        "outcome": v.outcome.name(),
        "trials": v.trials,
        "seed": v.seed,
        "witness": witness,
    })
}
