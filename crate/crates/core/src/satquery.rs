//! Classical query analysis of the unsatisfied-clause oracle.
//!
//! A normalized 3CNF formula Φ induces F_Φ(b) = number of clauses falsified
//! by assignment b. Because each clause touches at most 3 variables, F_Φ is
//! a multilinear polynomial of degree ≤ 3, so its 1 + n + C(n,2) + C(n,3)
//! coefficients — and with them every one of the 2ⁿ values — are fixed by
//! the queries of Hamming weight ≤ 3:
//!
//!   Y_i   = F(e^i) − F(0ⁿ)
//!   Y_ij  = F(e^{ij}) − F(e^i) − F(e^j) + F(0ⁿ)
//!   Y_ijk = F(e^{ijk}) − Σ F(e^{··}) + Σ F(e^{·}) − F(0ⁿ)
//!
//! and F(b) = F(0ⁿ) + Σ_{i∈I} Y_i + Σ_{i<j∈I} Y_ij + Σ_{i<j<k∈I} Y_ijk for
//! I = {i : b_i = 1}. The same coefficients fall out of clause-type counts
//! (each clause with negated set N and positive set P contributes (−1)^{|R|}
//! to the coefficient of N ∪ R for every R ⊆ P), which gives an independent
//! cross-check path. Satisfiability is then a scan of the reconstructed
//! values for a zero.

use crate::bits::{binomial, bit, format_bits, index_of_positions};
use crate::error::{Error, Result};
use rand::Rng;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Exhaustive-scan ceiling for the satisfiability decision.
pub const SAT_SCAN_LIMIT: usize = 24;

/// One signed variable occurrence; `var` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }
}

/// 1–3 literals over distinct variables, kept sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    /// True when the assignment falsifies every literal.
    fn unsatisfied_by(&self, b: usize, n: usize) -> bool {
        self.literals
            .iter()
            .all(|l| bit(b, l.var, n) == l.negated)
    }
}

/// A multiset of normalized clauses; F counts clause instances, so
/// duplicates are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula3CNF {
    n: usize,
    clauses: Vec<Clause>,
}

/// Collapse repeated literals, drop tautological clauses, validate indices.
pub fn normalize(raw_clauses: &[Vec<Literal>], n: usize) -> Result<Formula3CNF> {
    if n == 0 || n > usize::BITS as usize - 1 {
        return Err(Error::Domain(format!("variable count {n} out of range")));
    }
    let mut clauses = Vec::with_capacity(raw_clauses.len());
    for (ci, raw) in raw_clauses.iter().enumerate() {
        if raw.is_empty() || raw.len() > 3 {
            return Err(Error::Contract(format!(
                "clause {ci} has {} literals, want 1..=3",
                raw.len()
            )));
        }
        let mut by_var: BTreeMap<usize, bool> = BTreeMap::new();
        let mut tautology = false;
        for l in raw {
            if l.var == 0 || l.var > n {
                return Err(Error::Domain(format!(
                    "clause {ci} uses variable {} outside 1..={n}",
                    l.var
                )));
            }
            match by_var.insert(l.var, l.negated) {
                Some(prev) if prev != l.negated => {
                    // x ∨ ¬x: the clause is constant true.
                    tautology = true;
                }
                _ => {}
            }
        }
        if tautology {
            continue;
        }
        let literals = by_var
            .into_iter()
            .map(|(var, negated)| Literal { var, negated })
            .collect();
        clauses.push(Clause { literals });
    }
    Ok(Formula3CNF { n, clauses })
}

impl Formula3CNF {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// F_Φ(b): how many clause instances the assignment falsifies.
    pub fn count_unsatisfied(&self, b: usize) -> Result<i64> {
        if b >= 1usize << self.n {
            return Err(Error::Domain(format!(
                "assignment index {b} outside the {}-variable cube",
                self.n
            )));
        }
        Ok(self
            .clauses
            .iter()
            .filter(|c| c.unsatisfied_by(b, self.n))
            .count() as i64)
    }

    /// DIMACS text: `p cnf n m` header, clauses as signed 1-based variable
    /// numbers terminated by 0.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p cnf {} {}", self.n, self.clauses.len());
        for c in &self.clauses {
            for l in &c.literals {
                let signed = l.var as i64 * if l.negated { -1 } else { 1 };
                let _ = write!(out, "{signed} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parse DIMACS text (comment lines allowed) and normalize the result.
    pub fn from_dimacs(text: &str) -> Result<Formula3CNF> {
        let mut n: Option<usize> = None;
        let mut declared = 0usize;
        let mut raw: Vec<Vec<Literal>> = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                if n.is_some() {
                    return Err(Error::Parse("duplicate problem line".into()));
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(Error::Parse(format!("bad problem line {line:?}")));
                }
                n = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable count {:?}", fields[1])))?,
                );
                declared = fields[2]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad clause count {:?}", fields[2])))?;
                continue;
            }
            if n.is_none() {
                return Err(Error::Parse("clause before problem line".into()));
            }
            for tok in line.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad literal token {tok:?}")))?;
                if v == 0 {
                    raw.push(std::mem::take(&mut current));
                } else {
                    current.push(Literal {
                        var: v.unsigned_abs() as usize,
                        negated: v < 0,
                    });
                }
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing problem line".into()))?;
        if !current.is_empty() {
            return Err(Error::Parse("last clause is not 0-terminated".into()));
        }
        if raw.len() != declared {
            return Err(Error::Parse(format!(
                "header declares {declared} clauses, found {}",
                raw.len()
            )));
        }
        normalize(&raw, n)
    }
}

/// Uniformly random normalized formula: `clauses` clauses, each over 1–3
/// distinct variables with fair negation flags (never tautological).
pub fn random_formula<R: Rng + ?Sized>(
    n: usize,
    clauses: usize,
    rng: &mut R,
) -> Result<Formula3CNF> {
    if n == 0 {
        return Err(Error::Domain("need at least one variable".into()));
    }
    let mut raw = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let k = rng.random_range(1..=3.min(n));
        let mut vars = Vec::with_capacity(k);
        while vars.len() < k {
            let v = rng.random_range(1..=n);
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        raw.push(
            vars.into_iter()
                .map(|var| Literal { var, negated: rng.random::<bool>() })
                .collect(),
        );
    }
    normalize(&raw, n)
}

/// The weight-≤3 probe set in one fixed order: 0ⁿ, then e^i ascending, then
/// e^{ij} in lexicographic (i, j), then e^{ijk} in lexicographic (i, j, k).
pub fn canonical_queries(n: usize) -> Vec<usize> {
    let mut keys = Vec::with_capacity(expected_query_count(n));
    keys.push(0);
    for i in 1..=n {
        keys.push(index_of_positions(&[i], n));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            keys.push(index_of_positions(&[i, j], n));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                keys.push(index_of_positions(&[i, j, k], n));
            }
        }
    }
    keys
}

/// 1 + n + C(n,2) + C(n,3).
pub fn expected_query_count(n: usize) -> usize {
    1 + n + binomial(n, 2) as usize + binomial(n, 3) as usize
}

/// Recorded oracle answers on the canonical probe set.
#[derive(Clone, Debug)]
pub struct QueryTranscript {
    n: usize,
    values: HashMap<usize, i64>,
    query_count: usize,
}

impl QueryTranscript {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn query_count(&self) -> usize {
        self.query_count
    }

    pub fn get(&self, b: usize) -> Option<i64> {
        self.values.get(&b).copied()
    }

    /// Rebuild from raw parts (e.g. a deserialized report); `query_count`
    /// reflects the stored map, and completeness is checked at use time.
    pub fn from_values(n: usize, values: HashMap<usize, i64>) -> Self {
        let query_count = values.len();
        QueryTranscript { n, values, query_count }
    }

    /// JSON document with the probe values in canonical order.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{{\"n\":{},\"query_count\":{},\"values\":[", self.n, self.query_count);
        for (pos, key) in canonical_queries(self.n).iter().enumerate() {
            if pos > 0 {
                out.push(',');
            }
            match self.values.get(key) {
                Some(v) => {
                    let _ = write!(out, "{{\"b\":\"{}\",\"F\":{v}}}", format_bits(*key, self.n));
                }
                None => {
                    let _ = write!(out, "{{\"b\":\"{}\",\"F\":null}}", format_bits(*key, self.n));
                }
            }
        }
        out.push_str("]}");
        out
    }
}

/// Ask the oracle for every canonical probe, once each.
pub fn query_low_weight<F: FnMut(usize) -> i64>(mut oracle: F, n: usize) -> QueryTranscript {
    let keys = canonical_queries(n);
    let mut values = HashMap::with_capacity(keys.len());
    for &b in &keys {
        values.insert(b, oracle(b));
    }
    let query_count = keys.len();
    QueryTranscript { n, values, query_count }
}

/// Position of pair (i, j), 1 ≤ i < j ≤ n, in lexicographic enumeration.
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - i * (i - 1) / 2 + (j - i) - 1
}

/// Position of triple (i, j, k), 1 ≤ i < j < k ≤ n, in lexicographic
/// enumeration.
pub fn triple_index(i: usize, j: usize, k: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i < j && j < k && k <= n);
    let before_i: usize = (1..i).map(|a| binomial(n - a, 2) as usize).sum();
    let before_j: usize = (i + 1..j).map(|b| n - b).sum();
    before_i + before_j + (k - j - 1)
}

/// The multilinear coefficients of F: constant term plus the first three
/// levels of interaction terms (stored at the pair/triple rank positions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionTable {
    n: usize,
    f0: i64,
    y1: Vec<i64>,
    y2: Vec<i64>,
    y3: Vec<i64>,
}

impl ReconstructionTable {
    fn zeroed(n: usize) -> Self {
        ReconstructionTable {
            n,
            f0: 0,
            y1: vec![0; n],
            y2: vec![0; binomial(n, 2) as usize],
            y3: vec![0; binomial(n, 3) as usize],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f0(&self) -> i64 {
        self.f0
    }

    pub fn y1(&self, i: usize) -> i64 {
        self.y1[i - 1]
    }

    pub fn y2(&self, i: usize, j: usize) -> i64 {
        self.y2[pair_index(i, j, self.n)]
    }

    pub fn y3(&self, i: usize, j: usize, k: usize) -> i64 {
        self.y3[triple_index(i, j, k, self.n)]
    }

    pub fn to_json(&self) -> String {
        let join = |v: &[i64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{{\"n\":{},\"f0\":{},\"y1\":[{}],\"y2\":[{}],\"y3\":[{}]}}",
            self.n,
            self.f0,
            join(&self.y1),
            join(&self.y2),
            join(&self.y3)
        )
    }
}

/// Coefficients from the transcript by inclusion–exclusion over probes.
pub fn compute_table(t: &QueryTranscript) -> Result<ReconstructionTable> {
    let n = t.n;
    let need = |positions: &[usize]| -> Result<i64> {
        let key = index_of_positions(positions, n);
        t.get(key).ok_or_else(|| {
            Error::IncompleteTranscript(format!("missing probe {}", format_bits(key, n)))
        })
    };
    let mut table = ReconstructionTable::zeroed(n);
    table.f0 = need(&[])?;
    for i in 1..=n {
        table.y1[i - 1] = need(&[i])? - table.f0;
    }
    for i in 1..=n {
        for j in i + 1..=n {
            table.y2[pair_index(i, j, n)] =
                need(&[i, j])? - need(&[i])? - need(&[j])? + table.f0;
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                table.y3[triple_index(i, j, k, n)] = need(&[i, j, k])?
                    - need(&[i, j])?
                    - need(&[i, k])?
                    - need(&[j, k])?
                    + need(&[i])?
                    + need(&[j])?
                    + need(&[k])?
                    - table.f0;
            }
        }
    }
    Ok(table)
}

/// Coefficients straight from the clause list: a clause with negated-variable
/// set N and positive-variable set P falsifies exactly the assignments with
/// b|_N = 1, b|_P = 0, and expanding ∏_{p∈P}(1−b_p)·∏_{q∈N}b_q gives the
/// contribution (−1)^{|R|} to the coefficient of N ∪ R for every R ⊆ P.
pub fn clause_type_y(phi: &Formula3CNF) -> ReconstructionTable {
    let mut table = ReconstructionTable::zeroed(phi.n);
    for clause in &phi.clauses {
        let negated: Vec<usize> = clause
            .literals
            .iter()
            .filter(|l| l.negated)
            .map(|l| l.var)
            .collect();
        let positive: Vec<usize> = clause
            .literals
            .iter()
            .filter(|l| !l.negated)
            .map(|l| l.var)
            .collect();
        for r in 0..1usize << positive.len() {
            let sign = if r.count_ones() % 2 == 0 { 1 } else { -1 };
            let mut target = negated.clone();
            for (idx, &p) in positive.iter().enumerate() {
                if r >> idx & 1 == 1 {
                    target.push(p);
                }
            }
            target.sort_unstable();
            match target.as_slice() {
                [] => table.f0 += sign,
                [i] => table.y1[i - 1] += sign,
                [i, j] => table.y2[pair_index(*i, *j, phi.n)] += sign,
                [i, j, k] => table.y3[triple_index(*i, *j, *k, phi.n)] += sign,
                _ => unreachable!("clauses have at most 3 variables"),
            }
        }
    }
    table
}

/// F(b) from the coefficient table: sum over the set bits of b and their
/// pairs and triples.
pub fn evaluate(table: &ReconstructionTable, b: usize) -> Result<i64> {
    let n = table.n;
    if b >= 1usize << n {
        return Err(Error::Domain(format!(
            "assignment index {b} outside the {n}-variable cube"
        )));
    }
    let ones: Vec<usize> = (1..=n).filter(|&i| bit(b, i, n)).collect();
    let mut f = table.f0;
    for (a, &i) in ones.iter().enumerate() {
        f += table.y1[i - 1];
        for (bb, &j) in ones.iter().enumerate().skip(a + 1) {
            f += table.y2[pair_index(i, j, n)];
            for &k in ones.iter().skip(bb + 1) {
                f += table.y3[triple_index(i, j, k, n)];
            }
        }
    }
    Ok(f)
}

/// All 2ⁿ values of F at once via the subset-sum (zeta) transform over the
/// coefficient table: out[b] = Σ_{T ⊆ b} coeff_T in O(2ⁿ·n).
fn all_values(table: &ReconstructionTable) -> Vec<i64> {
    let n = table.n;
    let dim = 1usize << n;
    let mut f = vec![0i64; dim];
    f[0] = table.f0;
    for i in 1..=n {
        f[index_of_positions(&[i], n)] = table.y1[i - 1];
    }
    for i in 1..=n {
        for j in i + 1..=n {
            f[index_of_positions(&[i, j], n)] = table.y2[pair_index(i, j, n)];
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                f[index_of_positions(&[i, j, k], n)] = table.y3[triple_index(i, j, k, n)];
            }
        }
    }
    for bitpos in 0..n {
        let m = 1usize << bitpos;
        for mask in 0..dim {
            if mask & m != 0 {
                f[mask] += f[mask ^ m];
            }
        }
    }
    f
}

/// Scan all assignments in lexicographic order; the first with F = 0 is the
/// witness.
pub fn decide_sat(table: &ReconstructionTable) -> Result<(bool, Option<usize>)> {
    if table.n > SAT_SCAN_LIMIT {
        return Err(Error::Capacity(format!(
            "exhaustive scan capped at n ≤ {SAT_SCAN_LIMIT}, got {}",
            table.n
        )));
    }
    // Lexicographic order on fixed-length big-endian strings is ascending
    // index order.
    let witness = all_values(table).iter().position(|&v| v == 0);
    Ok((witness.is_some(), witness))
}

/// One verification row: reconstructed vs direct count at one assignment.
#[derive(Clone, Debug)]
pub struct ReconstructionRow {
    pub b: usize,
    pub f_reconstructed: i64,
    pub f_direct: i64,
    pub is_match: bool,
}

/// Run the full pipeline on Φ and compare the reconstruction against direct
/// counting on every assignment.
pub fn verification_report(phi: &Formula3CNF) -> Result<Vec<ReconstructionRow>> {
    if phi.n > SAT_SCAN_LIMIT {
        return Err(Error::Capacity(format!(
            "exhaustive verification capped at n ≤ {SAT_SCAN_LIMIT}, got {}",
            phi.n
        )));
    }
    let transcript = query_low_weight(|b| phi.count_unsatisfied(b).expect("probe in range"), phi.n);
    let table = compute_table(&transcript)?;
    let values = all_values(&table);
    let mut rows = Vec::with_capacity(values.len());
    for (b, &f_reconstructed) in values.iter().enumerate() {
        let f_direct = phi.count_unsatisfied(b)?;
        rows.push(ReconstructionRow {
            b,
            f_reconstructed,
            f_direct,
            is_match: f_reconstructed == f_direct,
        });
    }
    Ok(rows)
}

/// CSV rows `b,F_reconstructed,F_direct,match`.
pub fn report_to_csv(rows: &[ReconstructionRow], n: usize) -> String {
    let mut out = String::from("b,F_reconstructed,F_direct,match\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_bits(row.b, n),
            row.f_reconstructed,
            row.f_direct,
            row.is_match
        );
    }
    out
}
