//! Propositional formulas, literals, terms and the fixed normal-form procedures.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{BitAnd, BitOr, Not};

use crate::error::Result;

/// A propositional letter. Names are compared by exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Atom {
        let name = name.into();
        debug_assert!(is_identifier(&name), "invalid atom name `{name}`");
        Atom(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Atom {
    fn from(name: &str) -> Atom {
        Atom::new(name)
    }
}

/// True when `name` is a legal atom: `[a-zA-Z_][a-zA-Z0-9_]*` and not a
/// reserved constant.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && name != "true" && name != "false"
}

pub type AtomSet = BTreeSet<Atom>;

/// A literal, or one of the distinguished constants `TOP` / `BOT`.
///
/// Literals are ordered by atom name and then sign (positive first); the
/// constants sort before every atom literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Literal {
    Top,
    Bot,
    Pos(Atom),
    Neg(Atom),
}

impl Literal {
    pub fn pos(name: &str) -> Literal {
        Literal::Pos(Atom::new(name))
    }

    pub fn neg(name: &str) -> Literal {
        Literal::Neg(Atom::new(name))
    }

    pub fn new(atom: Atom, positive: bool) -> Literal {
        if positive {
            Literal::Pos(atom)
        } else {
            Literal::Neg(atom)
        }
    }

    pub fn complement(&self) -> Literal {
        match self {
            Literal::Top => Literal::Bot,
            Literal::Bot => Literal::Top,
            Literal::Pos(a) => Literal::Neg(a.clone()),
            Literal::Neg(a) => Literal::Pos(a.clone()),
        }
    }

    pub fn atom(&self) -> Option<&Atom> {
        match self {
            Literal::Pos(a) | Literal::Neg(a) => Some(a),
            Literal::Top | Literal::Bot => None,
        }
    }

    /// Sign of an atom literal; `TOP` counts as positive.
    pub fn is_positive(&self) -> bool {
        matches!(self, Literal::Pos(_) | Literal::Top)
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            Literal::Top => Formula::Const(true),
            Literal::Bot => Formula::Const(false),
            Literal::Pos(a) => Formula::Var(a.clone()),
            Literal::Neg(a) => Formula::Not(Box::new(Formula::Var(a.clone()))),
        }
    }

    /// Parses `a`, `!a`, `true` or `false`.
    pub fn parse(text: &str) -> Option<Literal> {
        let text = text.trim();
        match text {
            "true" => Some(Literal::Top),
            "false" => Some(Literal::Bot),
            _ => match text.strip_prefix('!') {
                Some(rest) if is_identifier(rest.trim()) => Some(Literal::neg(rest.trim())),
                Some(_) => None,
                None if is_identifier(text) => Some(Literal::pos(text)),
                None => None,
            },
        }
    }

    fn sort_key(&self) -> (u8, Option<&Atom>, bool) {
        match self {
            Literal::Top => (0, None, false),
            Literal::Bot => (1, None, false),
            Literal::Pos(a) => (2, Some(a), false),
            Literal::Neg(a) => (2, Some(a), true),
        }
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Top => f.write_str("true"),
            Literal::Bot => f.write_str("false"),
            Literal::Pos(a) => write!(f, "{a}"),
            Literal::Neg(a) => write!(f, "!{a}"),
        }
    }
}

fn literal_set_consistent(literals: &BTreeSet<Literal>) -> bool {
    if literals.contains(&Literal::Bot) {
        return false;
    }
    // Pos(a) and Neg(a) are adjacent in the canonical order.
    let mut prev: Option<&Literal> = None;
    for lit in literals {
        if let (Some(Literal::Pos(a)), Literal::Neg(b)) = (prev, lit) {
            if a == b {
                return false;
            }
        }
        prev = Some(lit);
    }
    true
}

/// A conjunction of literals, kept as a canonically ordered set.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    literals: BTreeSet<Literal>,
}

impl Term {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Term {
        Term {
            literals: literals.into_iter().collect(),
        }
    }

    /// The empty term, which denotes `true`.
    pub fn top() -> Term {
        Term::default()
    }

    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.literals
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn insert(&mut self, literal: Literal) {
        self.literals.insert(literal);
    }

    pub fn contains(&self, literal: &Literal) -> bool {
        self.literals.contains(literal)
    }

    /// No `BOT` and no atom with both signs.
    pub fn is_consistent(&self) -> bool {
        literal_set_consistent(&self.literals)
    }

    pub fn atoms(&self) -> AtomSet {
        self.literals.iter().filter_map(Literal::atom).cloned().collect()
    }

    /// Union of two terms.
    pub fn join(&self, other: &Term) -> Term {
        let mut literals = self.literals.clone();
        literals.extend(other.literals.iter().cloned());
        Term { literals }
    }

    /// Left-nested conjunction of the literals; the empty term is `true`.
    pub fn to_formula(&self) -> Formula {
        Formula::conjunction(self.literals.iter().map(Literal::to_formula))
    }
}

impl FromIterator<Literal> for Term {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Term {
        Term::new(iter)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// A disjunction of literals (one member of a [`CnfFormula`]).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: BTreeSet<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Clause {
        Clause {
            literals: literals.into_iter().collect(),
        }
    }

    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Left-nested disjunction of the literals; the empty clause is `false`.
    pub fn to_formula(&self) -> Formula {
        Formula::disjunction(self.literals.iter().map(Literal::to_formula))
    }
}

/// A disjunction of terms. The empty disjunction denotes `false`.
///
/// Terms are normally kept sorted and deduplicated. [`DnfFormula::from_raw`]
/// keeps a sequence as given, which is how raw algorithm output is carried.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DnfFormula {
    terms: Vec<Term>,
}

impl DnfFormula {
    pub fn new(terms: impl IntoIterator<Item = Term>) -> DnfFormula {
        let set: BTreeSet<Term> = terms.into_iter().collect();
        DnfFormula {
            terms: set.into_iter().collect(),
        }
    }

    pub fn from_raw(terms: Vec<Term>) -> DnfFormula {
        DnfFormula { terms }
    }

    pub fn bottom() -> DnfFormula {
        DnfFormula::default()
    }

    pub fn top() -> DnfFormula {
        DnfFormula {
            terms: alloc::vec![Term::top()],
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn canonicalize(self) -> DnfFormula {
        DnfFormula::new(self.terms)
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.windows(2).all(|w| w[0] < w[1])
    }

    pub fn atoms(&self) -> AtomSet {
        self.terms.iter().flat_map(|t| t.atoms()).collect()
    }

    /// Drops terms that contain complementary literals or `BOT`.
    pub fn consistent_terms(&self) -> DnfFormula {
        DnfFormula {
            terms: self.terms.iter().filter(|t| t.is_consistent()).cloned().collect(),
        }
    }

    pub fn to_formula(&self) -> Formula {
        Formula::disjunction(self.terms.iter().map(Term::to_formula))
    }

    /// Node count of [`DnfFormula::to_formula`], computed without building it.
    pub fn node_count(&self) -> usize {
        if self.terms.is_empty() {
            return 1;
        }
        let sum: usize = self.terms.iter().map(term_node_count).sum();
        sum + self.terms.len() - 1
    }
}

fn term_node_count(term: &Term) -> usize {
    if term.is_empty() {
        return 1;
    }
    let lits: usize = term
        .iter()
        .map(|l| if matches!(l, Literal::Neg(_)) { 2 } else { 1 })
        .sum();
    lits + term.len() - 1
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// A conjunction of clauses. The empty conjunction denotes `true`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> CnfFormula {
        let set: BTreeSet<Clause> = clauses.into_iter().collect();
        CnfFormula {
            clauses: set.into_iter().collect(),
        }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::conjunction(self.clauses.iter().map(Clause::to_formula))
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// Propositional formula over named atoms and the constants `true`/`false`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Const(bool),
    Var(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn top() -> Formula {
        Formula::Const(true)
    }

    pub fn bottom() -> Formula {
        Formula::Const(false)
    }

    pub fn var(name: &str) -> Formula {
        Formula::Var(Atom::new(name))
    }

    pub fn negate(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    /// `¬self ∨ rhs`, the expansion the parser uses for `->`.
    pub fn implies(self, rhs: Formula) -> Formula {
        self.negate().or(rhs)
    }

    /// `(¬self ∨ rhs) ∧ (¬rhs ∨ self)`, the expansion used for `<->`.
    pub fn iff(self, rhs: Formula) -> Formula {
        self.clone().implies(rhs.clone()).and(rhs.implies(self))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Const(true))
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Const(false))
    }

    pub fn parse(text: &str) -> Result<Formula> {
        crate::parse::parse(text)
    }

    /// Canonical text form; `Formula::parse` inverts it exactly.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// The literal this formula denotes, if it is one (`p`, `¬p`, `⊤`, `⊥`, `¬⊤`, `¬⊥`).
    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            Formula::Const(true) => Some(Literal::Top),
            Formula::Const(false) => Some(Literal::Bot),
            Formula::Var(a) => Some(Literal::Pos(a.clone())),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Var(a) => Some(Literal::Neg(a.clone())),
                Formula::Const(b) => Some(if *b { Literal::Bot } else { Literal::Top }),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn atoms(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut AtomSet) {
        match self {
            Formula::Const(_) => {}
            Formula::Var(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Maximum nesting of connectives.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Var(_) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// AST node count.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Var(_) => 1,
            Formula::Not(f) => 1 + f.node_count(),
            Formula::And(l, r) | Formula::Or(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Replaces every occurrence of `atom` with `replacement`.
    pub fn substitute(&self, atom: &Atom, replacement: &Formula) -> Formula {
        match self {
            Formula::Var(a) if a == atom => replacement.clone(),
            Formula::Const(_) | Formula::Var(_) => self.clone(),
            Formula::Not(f) => f.substitute(atom, replacement).negate(),
            Formula::And(l, r) => l.substitute(atom, replacement).and(r.substitute(atom, replacement)),
            Formula::Or(l, r) => l.substitute(atom, replacement).or(r.substitute(atom, replacement)),
        }
    }

    /// Negation normal form. Constants under negation are folded; no other
    /// simplification is applied.
    pub fn to_nnf(&self) -> Formula {
        match self {
            Formula::Const(_) | Formula::Var(_) => self.clone(),
            Formula::And(l, r) => l.to_nnf().and(r.to_nnf()),
            Formula::Or(l, r) => l.to_nnf().or(r.to_nnf()),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Const(b) => Formula::Const(!b),
                Formula::Var(_) => self.clone(),
                Formula::Not(f) => f.to_nnf(),
                Formula::And(l, r) => l.clone().negate().to_nnf().or(r.clone().negate().to_nnf()),
                Formula::Or(l, r) => l.clone().negate().to_nnf().and(r.clone().negate().to_nnf()),
            },
        }
    }

    /// nnf, then distribute ∧ over ∨. Terms with complementary literals are
    /// kept; terms and literals are sorted and deduplicated.
    pub fn to_dnf(&self) -> DnfFormula {
        DnfFormula {
            terms: distribute(&self.to_nnf(), true)
                .into_iter()
                .map(|literals| Term { literals })
                .collect(),
        }
    }

    /// nnf, then distribute ∨ over ∧, canonicalized like [`Formula::to_dnf`].
    pub fn to_cnf(&self) -> CnfFormula {
        CnfFormula {
            clauses: distribute(&self.to_nnf(), false)
                .into_iter()
                .map(|literals| Clause { literals })
                .collect(),
        }
    }
}

/// Distribution over an nnf formula. With `dnf` set, the result is a set of
/// conjunctive literal sets; otherwise a set of disjunctive ones.
fn distribute(nnf: &Formula, dnf: bool) -> BTreeSet<BTreeSet<Literal>> {
    let unit = || {
        let mut s = BTreeSet::new();
        s.insert(BTreeSet::new());
        s
    };
    match nnf {
        Formula::Const(b) => {
            if *b == dnf {
                unit()
            } else {
                BTreeSet::new()
            }
        }
        Formula::Var(_) | Formula::Not(_) => {
            let lit = nnf.as_literal().expect("nnf negation applies to an atom");
            let mut s = BTreeSet::new();
            s.insert(core::iter::once(lit).collect());
            s
        }
        Formula::And(l, r) | Formula::Or(l, r) => {
            let left = distribute(l, dnf);
            let right = distribute(r, dnf);
            let is_product = matches!(nnf, Formula::And(..)) == dnf;
            if is_product {
                let mut out = BTreeSet::new();
                for a in &left {
                    for b in &right {
                        let mut joined = a.clone();
                        joined.extend(b.iter().cloned());
                        out.insert(joined);
                    }
                }
                out
            } else {
                let mut out = left;
                out.extend(right);
                out
            }
        }
    }
}

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Const(true) => f.write_str("true"),
            Formula::Const(false) => f.write_str("false"),
            Formula::Var(a) => write!(f, "{a}"),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Const(_) | Formula::Var(_) | Formula::Not(_) => write!(f, "!{inner}"),
                _ => write!(f, "!({inner})"),
            },
            Formula::And(l, r) => {
                write_child(f, l, PREC_AND, false)?;
                f.write_str(" & ")?;
                write_child(f, r, PREC_AND, true)
            }
            Formula::Or(l, r) => {
                write_child(f, l, PREC_OR, false)?;
                f.write_str(" | ")?;
                write_child(f, r, PREC_OR, true)
            }
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parent: u8, right: bool) -> fmt::Result {
    let prec = match child {
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => u8::MAX,
    };
    // Both binary operators parse left-associatively, so a same-precedence
    // right child needs parentheses. Conjunctions under a disjunction are
    // bracketed for readability.
    let wrap = prec < parent || (prec == parent && right) || (parent == PREC_OR && prec == PREC_AND);
    if wrap {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl BitAnd for Formula {
    type Output = Formula;
    fn bitand(self, rhs: Formula) -> Formula {
        self.and(rhs)
    }
}

impl BitOr for Formula {
    type Output = Formula;
    fn bitor(self, rhs: Formula) -> Formula {
        self.or(rhs)
    }
}

impl Not for Formula {
    type Output = Formula;
    fn not(self) -> Formula {
        self.negate()
    }
}

impl From<Literal> for Formula {
    fn from(lit: Literal) -> Formula {
        lit.to_formula()
    }
}
