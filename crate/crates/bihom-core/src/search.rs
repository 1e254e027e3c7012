//! Exhaustive enumeration of low-dimensional structures over finite
//! coefficient grids, verified by the independent numeric oracle and
//! matched back against the catalog families.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{BiHomAlgebra, Kind, LinearMap};
use crate::catalog::{catalog_entries, CatalogEntry};
use crate::document::{load_algebra, AlgebraDocument};
use crate::error::{Error, Result};
use crate::numeric::{
    numeric_from_document, oracle_passes_quick, oracle_verify_numeric, Matrix, NumericAlgebra,
    Tensor,
};
use crate::poly::{Polynomial, Rational};
use crate::report::{Report, Verdict};
use crate::representations::Representation;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismShape {
    Diagonal,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductSelection {
    Mu,
    Bracket,
    Both,
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub dim: usize,
    pub grid: Vec<Rational>,
    pub morphism_shape: MorphismShape,
    pub products: ProductSelection,
    pub symmetry_reduction: bool,
    pub budget: u128,
}

pub const DEFAULT_BUDGET: u128 = 100_000_000;

impl SearchSpec {
    pub fn new(dim: usize, grid: Vec<Rational>) -> SearchSpec {
        SearchSpec {
            dim,
            grid,
            morphism_shape: MorphismShape::Diagonal,
            products: ProductSelection::Both,
            symmetry_reduction: false,
            budget: DEFAULT_BUDGET,
        }
    }

    fn map_slots(&self) -> usize {
        match self.morphism_shape {
            MorphismShape::Diagonal => self.dim,
            MorphismShape::General => self.dim * self.dim,
        }
    }

    fn product_blocks(&self) -> (bool, bool) {
        match self.products {
            ProductSelection::Mu => (true, false),
            ProductSelection::Bracket => (false, true),
            ProductSelection::Both => (true, true),
        }
    }

    /// Number of free slots: both morphisms plus each enumerated tensor.
    pub fn slot_count(&self) -> usize {
        let (mu, bracket) = self.product_blocks();
        let cube = self.dim * self.dim * self.dim;
        2 * self.map_slots() + usize::from(mu) * cube + usize::from(bracket) * cube
    }

    /// |grid|^slots, the raw candidate count.
    pub fn total_candidates(&self) -> Result<u128> {
        if self.grid.is_empty() {
            return Err(Error::InvalidDocument("empty search grid".into()));
        }
        let mut unique = self.grid.clone();
        unique.sort();
        unique.dedup();
        if unique.len() != self.grid.len() {
            return Err(Error::InvalidDocument("duplicate grid value".into()));
        }
        let g = self.grid.len() as u128;
        let mut total: u128 = 1;
        for _ in 0..self.slot_count() {
            total = total.checked_mul(g).ok_or(Error::BudgetExceeded {
                slots: self.slot_count(),
                total: u128::MAX,
                budget: self.budget,
            })?;
        }
        Ok(total)
    }

    pub fn check_budget(&self) -> Result<u128> {
        let total = self.total_candidates()?;
        if total > self.budget {
            return Err(Error::BudgetExceeded {
                slots: self.slot_count(),
                total,
                budget: self.budget,
            });
        }
        Ok(total)
    }
}

/// Streaming enumerator with subtree pruning. Candidates failing the
/// commuting-maps or multiplicativity prechecks on a partial assignment
/// are skipped without expanding the remaining slots.
pub struct CandidateStream<'a> {
    spec: &'a SearchSpec,
    idx: u128,
    end: u128,
    /// stride of the subtree hanging below each block boundary
    maps_stride: u128,
    mu_stride: u128,
    has_mu: bool,
    has_bracket: bool,
    /// quotients identifying the last prechecked prefixes
    checked_maps: Option<u128>,
    checked_mu: Option<u128>,
}

impl<'a> CandidateStream<'a> {
    pub fn new(spec: &'a SearchSpec, start: u128, end: u128) -> Result<CandidateStream<'a>> {
        spec.check_budget()?;
        let g = spec.grid.len() as u128;
        let slots = spec.slot_count() as u32;
        let (has_mu, has_bracket) = spec.product_blocks();
        let cube = (spec.dim * spec.dim * spec.dim) as u32;
        let maps_end = 2 * spec.map_slots() as u32;
        let mu_end = maps_end + u32::from(has_mu) * cube;
        Ok(CandidateStream {
            spec,
            idx: start,
            end,
            maps_stride: g.pow(slots - maps_end),
            mu_stride: g.pow(slots - mu_end),
            has_mu,
            has_bracket,
            checked_maps: None,
            checked_mu: None,
        })
    }

    fn digit(&self, idx: u128, slot: usize) -> usize {
        let g = self.spec.grid.len() as u128;
        let stride = g.pow((self.spec.slot_count() - 1 - slot) as u32);
        ((idx / stride) % g) as usize
    }

    fn decode(&self, idx: u128) -> NumericAlgebra {
        let spec = self.spec;
        let dim = spec.dim;
        let g = &spec.grid;
        let mut slot = 0;
        let mut next = || {
            let d = self.digit(idx, slot);
            slot += 1;
            g[d].clone()
        };
        let mut alpha = vec![vec![Rational::from_integer(0.into()); dim]; dim];
        let mut beta = vec![vec![Rational::from_integer(0.into()); dim]; dim];
        match spec.morphism_shape {
            MorphismShape::Diagonal => {
                for (i, row) in alpha.iter_mut().enumerate() {
                    row[i] = next();
                }
                for (i, row) in beta.iter_mut().enumerate() {
                    row[i] = next();
                }
            }
            MorphismShape::General => {
                for row in alpha.iter_mut() {
                    for e in row.iter_mut() {
                        *e = next();
                    }
                }
                for row in beta.iter_mut() {
                    for e in row.iter_mut() {
                        *e = next();
                    }
                }
            }
        }
        let mut tensor = |enabled: bool| -> Option<Tensor> {
            if !enabled {
                return Some(vec![
                    vec![vec![Rational::from_integer(0.into()); dim]; dim];
                    dim
                ]);
            }
            let mut t = vec![vec![vec![Rational::from_integer(0.into()); dim]; dim]; dim];
            for plane in t.iter_mut() {
                for row in plane.iter_mut() {
                    for e in row.iter_mut() {
                        *e = next();
                    }
                }
            }
            Some(t)
        };
        let (has_mu, has_bracket) = spec.product_blocks();
        NumericAlgebra {
            dim,
            mu: tensor(has_mu),
            bracket: tensor(has_bracket),
            alpha,
            beta,
        }
    }
}

/// Relabel the first two basis vectors of a candidate.
fn swap_basis(n: &NumericAlgebra) -> NumericAlgebra {
    let s = |i: usize| -> usize {
        match i {
            0 => 1,
            1 => 0,
            other => other,
        }
    };
    let dim = n.dim;
    let tensor = |t: &Tensor| -> Tensor {
        let mut out = t.clone();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    out[i][j][k] = t[s(i)][s(j)][s(k)].clone();
                }
            }
        }
        out
    };
    let matrix = |m: &Matrix| -> Matrix {
        let mut out = m.clone();
        for i in 0..dim {
            for j in 0..dim {
                out[i][j] = m[s(i)][s(j)].clone();
            }
        }
        out
    };
    NumericAlgebra {
        dim,
        mu: n.mu.as_ref().map(&tensor),
        bracket: n.bracket.as_ref().map(&tensor),
        alpha: matrix(&n.alpha),
        beta: matrix(&n.beta),
    }
}

/// Raw index of a candidate whose entries all lie on the grid; the
/// inverse of `decode`.
fn encode(spec: &SearchSpec, n: &NumericAlgebra) -> Option<u128> {
    let g = spec.grid.len() as u128;
    let digit_of =
        |v: &Rational| -> Option<u128> { spec.grid.iter().position(|x| x == v).map(|p| p as u128) };
    let mut idx: u128 = 0;
    let mut push = |v: &Rational| -> Option<()> {
        idx = idx * g + digit_of(v)?;
        Some(())
    };
    match spec.morphism_shape {
        MorphismShape::Diagonal => {
            for i in 0..spec.dim {
                push(&n.alpha[i][i])?;
            }
            for i in 0..spec.dim {
                push(&n.beta[i][i])?;
            }
        }
        MorphismShape::General => {
            for row in &n.alpha {
                for v in row {
                    push(v)?;
                }
            }
            for row in &n.beta {
                for v in row {
                    push(v)?;
                }
            }
        }
    }
    let (has_mu, has_bracket) = spec.product_blocks();
    if has_mu {
        for plane in n.mu.as_ref()? {
            for row in plane {
                for v in row {
                    push(v)?;
                }
            }
        }
    }
    if has_bracket {
        for plane in n.bracket.as_ref()? {
            for row in plane {
                for v in row {
                    push(v)?;
                }
            }
        }
    }
    Some(idx)
}

/// Keep only the lexicographically least representative of each
/// basis-swap orbit; off-grid swapped entries (impossible for candidates
/// decoded from the grid) keep the candidate.
fn is_swap_representative(spec: &SearchSpec, idx: u128, n: &NumericAlgebra) -> bool {
    if spec.dim < 2 {
        return true;
    }
    // a diagonal-shape swap of a non-diagonal swapped tensor is still
    // expressible: the swap permutes diagonal entries among themselves
    match encode(spec, &swap_basis(n)) {
        Some(swapped_idx) => idx <= swapped_idx,
        None => true,
    }
}

fn maps_commute(n: &NumericAlgebra) -> bool {
    crate::numeric::run_identity(n, "commuting_maps")
        .map(|c| c.map(|c| c.verdict == Verdict::Pass).unwrap_or(false))
        .unwrap_or(false)
}

fn multiplicative(n: &NumericAlgebra) -> bool {
    crate::numeric::run_identity(n, "multiplicativity")
        .map(|c| c.map(|c| c.verdict == Verdict::Pass).unwrap_or(false))
        .unwrap_or(false)
}

impl Iterator for CandidateStream<'_> {
    /// (raw candidate index, decoded structure)
    type Item = (u128, NumericAlgebra);

    fn next(&mut self) -> Option<Self::Item> {
        while self.idx < self.end {
            let idx = self.idx;
            let candidate = self.decode(idx);

            // precheck 1: commuting maps, once per maps-prefix
            let maps_key = idx / self.maps_stride;
            if self.checked_maps != Some(maps_key) {
                self.checked_maps = Some(maps_key);
                if !maps_commute(&candidate) {
                    self.idx = (maps_key + 1) * self.maps_stride;
                    self.checked_maps = None;
                    self.checked_mu = None;
                    continue;
                }
            }

            // precheck 2: multiplicativity of the mu block
            if self.has_mu {
                let mu_key = idx / self.mu_stride;
                if self.checked_mu != Some(mu_key) {
                    self.checked_mu = Some(mu_key);
                    let probe = NumericAlgebra {
                        dim: candidate.dim,
                        mu: candidate.mu.clone(),
                        bracket: None,
                        alpha: candidate.alpha.clone(),
                        beta: candidate.beta.clone(),
                    };
                    if !multiplicative(&probe) {
                        self.idx = (mu_key + 1) * self.mu_stride;
                        self.checked_mu = None;
                        continue;
                    }
                }
            }

            // precheck 3: multiplicativity of the bracket block
            if self.has_bracket {
                let probe = NumericAlgebra {
                    dim: candidate.dim,
                    mu: None,
                    bracket: candidate.bracket.clone(),
                    alpha: candidate.alpha.clone(),
                    beta: candidate.beta.clone(),
                };
                if !multiplicative(&probe) {
                    self.idx += 1;
                    continue;
                }
            }

            self.idx += 1;
            return Some((idx, candidate));
        }
        None
    }
}

/// Stream of pruned candidates as numeric documents, per the external
/// contract; `run_search` uses the internal stream directly.
pub fn enumerate_candidates(
    spec: &SearchSpec,
) -> Result<impl Iterator<Item = (u128, AlgebraDocument)> + '_> {
    let total = spec.check_budget()?;
    let stream = CandidateStream::new(spec, 0, total)?;
    Ok(stream.map(|(idx, n)| (idx, document_of_numeric(&n))))
}

fn rational_str(r: &Rational) -> String {
    r.to_string()
}

pub fn document_of_numeric(n: &NumericAlgebra) -> AlgebraDocument {
    let sparse = |t: &Option<Tensor>| -> Option<Vec<(usize, usize, usize, String)>> {
        t.as_ref().map(|t| {
            let mut out = Vec::new();
            for (i, plane) in t.iter().enumerate() {
                for (j, row) in plane.iter().enumerate() {
                    for (k, v) in row.iter().enumerate() {
                        if !num_traits::Zero::is_zero(v) {
                            out.push((i + 1, j + 1, k + 1, rational_str(v)));
                        }
                    }
                }
            }
            out
        })
    };
    let grid = |m: &Matrix| -> Vec<Vec<String>> {
        m.iter()
            .map(|row| row.iter().map(rational_str).collect())
            .collect()
    };
    AlgebraDocument {
        dimension: n.dim,
        parameters: vec![],
        assumptions_nonzero: vec![],
        mu: sparse(&n.mu),
        bracket: sparse(&n.bracket),
        alpha: grid(&n.alpha),
        beta: grid(&n.beta),
        kind: Kind::Poisson,
    }
}

/// Independent-path verdict for a fully-numeric document.
pub fn oracle_verify(doc: &AlgebraDocument) -> Result<Report> {
    crate::numeric::oracle_verify(doc)
}

// ---------------------------------------------------------------------------
// family matching
// ---------------------------------------------------------------------------

pub type Assignment = BTreeMap<String, Rational>;

/// Collect every (entry scalar, target value) slot pair of the entry's
/// tensors and morphisms against the candidate.
fn slots_of(entry: &BiHomAlgebra, n: &NumericAlgebra) -> Option<Vec<(Scalar, Rational)>> {
    let mut slots = Vec::new();
    match (&entry.mu, &n.mu) {
        (Some(em), Some(nm)) => {
            for i in 0..entry.dim {
                for j in 0..entry.dim {
                    for k in 0..entry.dim {
                        slots.push((em.constants[i][j][k].clone(), nm[i][j][k].clone()));
                    }
                }
            }
        }
        (None, None) => {}
        _ => return None,
    }
    match (&entry.bracket, &n.bracket) {
        (Some(eb), Some(nb)) => {
            for i in 0..entry.dim {
                for j in 0..entry.dim {
                    for k in 0..entry.dim {
                        slots.push((eb.constants[i][j][k].clone(), nb[i][j][k].clone()));
                    }
                }
            }
        }
        (None, None) => {}
        _ => return None,
    }
    for i in 0..entry.dim {
        for j in 0..entry.dim {
            slots.push((entry.alpha.entries[i][j].clone(), n.alpha[i][j].clone()));
            slots.push((entry.beta.entries[i][j].clone(), n.beta[i][j].clone()));
        }
    }
    Some(slots)
}

/// Solve `entry == candidate` slot by slot: read off single-parameter
/// slots directly, then resolve remaining slots that have become linear
/// in one unknown, and finally re-instantiate to confirm exact equality.
fn match_entry(entry: &BiHomAlgebra, n: &NumericAlgebra) -> Option<Assignment> {
    if entry.dim != n.dim {
        return None;
    }
    let slots = slots_of(entry, n)?;
    // constant slots reject most candidates without any solving
    for (s, v) in &slots {
        if let Some(c) = s.as_constant() {
            if &c != v {
                return None;
            }
        }
    }
    let mut assign: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut unresolved: Vec<(Polynomial, bool)> = slots
        .iter()
        .map(|(s, v)| {
            // num - v * den = 0
            (s.num().sub(&s.den().scale(v)), false)
        })
        .collect();
    loop {
        let mut progress = false;
        let mut all_done = true;
        for (poly, done) in unresolved.iter_mut() {
            if *done {
                continue;
            }
            let reduced = poly.partial_eval(&assign);
            let unknowns = reduced.used_vars();
            match unknowns.len() {
                0 => {
                    if !reduced.is_zero() {
                        return None;
                    }
                    *done = true;
                    progress = true;
                }
                1 => {
                    let u = *unknowns.iter().next().unwrap();
                    if reduced.degree_in(u) != 1 {
                        all_done = false;
                        continue;
                    }
                    let a = reduced.coeff_of(u, 1).as_constant()?;
                    let b = reduced.coeff_of(u, 0).as_constant()?;
                    assign.insert(u, -b / a);
                    *done = true;
                    progress = true;
                }
                _ => {
                    all_done = false;
                }
            }
        }
        if all_done {
            break;
        }
        if !progress {
            return None;
        }
    }
    // free parameters default to 1, which also satisfies the nonzero
    // assumptions
    for idx in 0..entry.params.len() {
        assign
            .entry(idx)
            .or_insert_with(|| Rational::from_integer(1.into()));
    }
    for name in &entry.assumptions_nonzero {
        let idx = entry.params.index_of(name)?;
        if num_traits::Zero::is_zero(&assign[&idx]) {
            return None;
        }
    }
    // re-check, not trusted: instantiate the entry and compare exactly
    let point: Vec<Rational> = (0..entry.params.len())
        .map(|i| assign[&i].clone())
        .collect();
    let instantiated = crate::numeric::instantiate(entry, &point).ok()?;
    if &instantiated != n {
        return None;
    }
    Some(
        assign
            .into_iter()
            .map(|(idx, v)| (entry.params.names()[idx].clone(), v))
            .collect(),
    )
}

/// Every catalog family together with a parameter assignment that
/// reproduces the candidate exactly.
pub fn match_family(
    doc: &AlgebraDocument,
    catalog: &[CatalogEntry],
) -> Result<Vec<(String, Assignment)>> {
    let loaded = load_entries(catalog)?;
    match_family_loaded(doc, &loaded)
}

fn load_entries(catalog: &[CatalogEntry]) -> Result<Vec<(String, BiHomAlgebra)>> {
    catalog
        .iter()
        .map(|e| Ok((e.id.clone(), load_algebra(&e.document)?)))
        .collect()
}

fn match_family_loaded(
    doc: &AlgebraDocument,
    catalog: &[(String, BiHomAlgebra)],
) -> Result<Vec<(String, Assignment)>> {
    let n = numeric_from_document(doc)?;
    let mut out = Vec::new();
    for (id, algebra) in catalog {
        if algebra.dim != n.dim {
            continue;
        }
        if let Some(assignment) = match_entry(algebra, &n) {
            out.push((id.clone(), assignment));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// search driver
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub index: u128,
    pub document: AlgebraDocument,
    pub bihom_commutative: bool,
    pub matches: Vec<(String, Assignment)>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub dim: usize,
    pub count_raw: u128,
    pub count_examined: u64,
    pub structures: Vec<SearchHit>,
}

impl SearchResult {
    pub fn matched(&self) -> impl Iterator<Item = &SearchHit> {
        self.structures.iter().filter(|s| !s.matches.is_empty())
    }

    pub fn uncatalogued(&self) -> impl Iterator<Item = &SearchHit> {
        self.structures.iter().filter(|s| s.matches.is_empty())
    }

    pub fn to_json(&self) -> Value {
        let structures: Vec<Value> = self
            .structures
            .iter()
            .map(|s| {
                json!({
                    "bihom_commutative": s.bihom_commutative,
                    "document": s.document,
                    "index": s.index.to_string(),
                    "matches": s.matches.iter().map(|(id, a)| json!({
                        "assignment": a.iter()
                            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
                            .collect::<serde_json::Map<String, Value>>(),
                        "id": id,
                    })).collect::<Vec<Value>>(),
                })
            })
            .collect();
        json!({
            "count_examined": self.count_examined,
            "count_raw": self.count_raw.to_string(),
            "count_uncatalogued": self.uncatalogued().count(),
            "dim": self.dim,
            "structures": structures,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "raw space {} candidates, {} pass the prechecks, {} verified structures\n",
            self.count_raw,
            self.count_examined,
            self.structures.len()
        ));
        out.push_str("matched structures:\n");
        for s in self.matched() {
            let families: Vec<String> = s
                .matches
                .iter()
                .map(|(id, a)| {
                    let binds: Vec<String> = a.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    format!("{id}({})", binds.join(","))
                })
                .collect();
            out.push_str(&format!(
                "  #{} {}{} -> {}\n",
                s.index,
                summarize_document(&s.document),
                if s.bihom_commutative {
                    ""
                } else {
                    " [non-commutative]"
                },
                families.join("; ")
            ));
        }
        out.push_str("uncatalogued structures:\n");
        for s in self.uncatalogued() {
            out.push_str(&format!(
                "  #{} {}{}\n",
                s.index,
                summarize_document(&s.document),
                if s.bihom_commutative {
                    ""
                } else {
                    " [non-commutative]"
                },
            ));
        }
        out
    }
}

fn summarize_document(doc: &AlgebraDocument) -> String {
    let fmt_sparse = |entries: &Option<Vec<(usize, usize, usize, String)>>, sym: &str| {
        entries
            .as_ref()
            .map(|list| {
                if list.is_empty() {
                    format!("{sym}=0")
                } else {
                    let parts: Vec<String> = list
                        .iter()
                        .map(|(i, j, k, v)| format!("{sym}({i},{j})={v}e{k}"))
                        .collect();
                    parts.join(" ")
                }
            })
            .unwrap_or_default()
    };
    let diag = |g: &Vec<Vec<String>>, name: &str| {
        let entries: Vec<String> = g
            .iter()
            .enumerate()
            .map(|(i, row)| row.get(i).cloned().unwrap_or_else(|| "0".into()))
            .collect();
        format!("{name}=diag({})", entries.join(","))
    };
    format!(
        "{} {} {} {}",
        fmt_sparse(&doc.mu, "mu"),
        fmt_sparse(&doc.bracket, "{}"),
        diag(&doc.alpha, "alpha"),
        diag(&doc.beta, "beta"),
    )
}

/// Enumerate, verify with the numeric oracle, and match against the
/// catalog. Deterministic: output is ordered by candidate index no
/// matter how many workers run.
pub fn run_search(spec: &SearchSpec, jobs: usize) -> Result<SearchResult> {
    let total = spec.check_budget()?;
    let catalog = load_entries(&catalog_entries())?;
    let jobs = jobs.max(1);
    let ranges: Vec<(u128, u128)> = if jobs == 1 {
        vec![(0, total)]
    } else {
        let step = total.div_ceil(jobs as u128);
        (0..jobs as u128)
            .map(|w| (w * step, ((w + 1) * step).min(total)))
            .filter(|(s, e)| s < e)
            .collect()
    };
    let worker = |start: u128, end: u128| -> Result<(u64, Vec<SearchHit>)> {
        let mut count = 0u64;
        let mut hits = Vec::new();
        for (idx, candidate) in CandidateStream::new(spec, start, end)? {
            count += 1;
            if spec.symmetry_reduction && !is_swap_representative(spec, idx, &candidate) {
                continue;
            }
            if !oracle_passes_quick(&candidate)? {
                continue;
            }
            let report = oracle_verify_numeric(&candidate)?;
            debug_assert!(report.passed());
            let commutative = report
                .check("bihom_commutativity")
                .map(|c| c.verdict == Verdict::Pass)
                .unwrap_or(true);
            let document = document_of_numeric(&candidate);
            let matches = match_family_loaded(&document, &catalog)?;
            hits.push(SearchHit {
                index: idx,
                document,
                bihom_commutative: commutative,
                matches,
            });
        }
        Ok((count, hits))
    };
    let mut parts: Vec<Result<(u64, Vec<SearchHit>)>> = Vec::new();
    if ranges.len() <= 1 {
        let (s, e) = ranges.first().copied().unwrap_or((0, 0));
        parts.push(worker(s, e));
    } else {
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (s, e) in &ranges {
                let (s, e) = (*s, *e);
                handles.push(scope.spawn(move || worker(s, e)));
            }
            for h in handles {
                parts.push(h.join().expect("search worker panicked"));
            }
        });
    }
    let mut count_examined = 0u64;
    let mut structures = Vec::new();
    for part in parts {
        let (c, hits) = part?;
        count_examined += c;
        structures.extend(hits);
    }
    structures.sort_by_key(|h| h.index);
    Ok(SearchResult {
        dim: spec.dim,
        count_raw: total,
        count_examined,
        structures,
    })
}

// ---------------------------------------------------------------------------
// small-matrix representation solver
// ---------------------------------------------------------------------------

/// Exhaustive search over module actions with entries drawn from a small
/// grid (module maps included), returning every candidate that passes
/// the kind-appropriate representation checker.
pub fn find_representations(
    a: &BiHomAlgebra,
    module_dim: usize,
    grid: &[Rational],
    limit: usize,
) -> Result<Vec<Representation>> {
    let params = &a.params;
    let m2 = module_dim * module_dim;
    let families = usize::from(a.bracket.is_some()) + usize::from(a.mu.is_some());
    let slots = families * a.dim * m2 + 2 * m2;
    let total = (grid.len() as u128)
        .checked_pow(slots as u32)
        .filter(|t| *t <= 10_000_000)
        .ok_or(Error::BudgetExceeded {
            slots,
            total: u128::MAX,
            budget: 10_000_000,
        })?;
    let decode_map = |digits: &mut dyn Iterator<Item = usize>| -> LinearMap {
        let mut map = LinearMap::zero(params, module_dim);
        for i in 0..module_dim {
            for j in 0..module_dim {
                let d = digits.next().unwrap();
                map.entries[i][j] = Scalar::constant(params, grid[d].clone());
            }
        }
        map
    };
    let mut out = Vec::new();
    for idx in 0..total {
        let g = grid.len() as u128;
        let mut digits = (0..slots).map(|s| ((idx / g.pow((slots - 1 - s) as u32)) % g) as usize);
        let rho_bracket = a.bracket.as_ref().map(|_| {
            (0..a.dim)
                .map(|_| decode_map(&mut digits))
                .collect::<Vec<_>>()
        });
        let rho_mu = a.mu.as_ref().map(|_| {
            (0..a.dim)
                .map(|_| decode_map(&mut digits))
                .collect::<Vec<_>>()
        });
        let gamma = decode_map(&mut digits);
        let nu = decode_map(&mut digits);
        let rep = Representation {
            algebra: a.clone(),
            module_dim,
            rho_bracket,
            rho_mu,
            gamma,
            nu,
        };
        let report = match a.kind {
            Kind::Poisson => crate::representations::check_poisson_representation(&rep)?,
            Kind::Lie => crate::representations::check_lie_representation(&rep)?,
            _ => crate::representations::check_assoc_representation(&rep)?,
        };
        if report.passed() {
            out.push(rep);
            if out.len() >= limit {
                break;
            }
        }
    }
    Ok(out)
}
