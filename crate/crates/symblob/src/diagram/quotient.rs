//! The two-sided ideal quotient that turns the decorated-diagram algebra into
//! the symplectic blob algebra.
//!
//! The ideal is generated by phi(IJI) - kLR phi(I) and phi(JIJ) - kLR phi(J),
//! where I and J are the products of the odd and even generators. Every
//! monomial multiple of these generators is again a two-term vector (products
//! of single diagrams are single diagrams), so the row space of the ideal is
//! spanned by binomial relations `c1 d1 = c2 d2`. Row-reducing such a span is
//! a ratio-weighted union-find over diagrams; an inconsistent ratio on a
//! cycle forces the whole class into the ideal (a "dead" class). The closure
//! sweeps every recorded relation with every generator on both sides until a
//! fixed point, which makes the span a two-sided ideal.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::scalar::{Field, ParameterSet};

use super::concat::multiply;
use super::enumerate::{enumerate_basis, Flavor};
use super::{generator_diagram, Diagram};

#[derive(Clone, Debug)]
enum WorkItem<F> {
    /// c1 * d1 - c2 * d2 lies in the ideal.
    Pair(F, u32, F, u32),
    /// d lies in the ideal on its own.
    Single(u32),
}

/// Ratio-weighted union-find closure of the quotient ideal. Nodes are
/// interned diagrams, discovered lazily; a class records that all members are
/// proportional modulo the ideal; a dead class lies inside the ideal.
pub struct IdealClosure<F: Field> {
    n: u16,
    params: ParameterSet<F>,
    gens: Vec<Diagram>,
    diagrams: Vec<Diagram>,
    ids: HashMap<Diagram, u32>,
    parent: Vec<u32>,
    /// e_self = ratio * e_parent, along the parent chain.
    ratio: Vec<F>,
    dead: Vec<bool>,
    seen_pairs: HashSet<(u32, u32, F)>,
    seen_singles: HashSet<u32>,
}

impl<F: Field> IdealClosure<F> {
    /// Runs the closure for size `n` without enumerating the diagram basis.
    pub fn build(n: u16, params: &ParameterSet<F>) -> Result<IdealClosure<F>> {
        Self::build_with_generator_scalar(n, params, &params.kappa_lr)
    }

    /// Same closure with the scalar in the ideal generators replaced; used as
    /// a negative control (any other scalar strictly collapses dimensions).
    pub fn build_with_generator_scalar(
        n: u16,
        params: &ParameterSet<F>,
        scalar: &F,
    ) -> Result<IdealClosure<F>> {
        if n == 1 && !(params.kappa_l == params.kappa_lr && params.kappa_r == params.kappa_lr) {
            return Err(Error::CollapsedParametersRequired);
        }
        let gens: Vec<Diagram> = (0..=n as usize)
            .map(|g| generator_diagram(g, n))
            .collect::<Result<_>>()?;
        let mut closure = IdealClosure {
            n,
            params: params.clone(),
            gens,
            diagrams: Vec::new(),
            ids: HashMap::new(),
            parent: Vec::new(),
            ratio: Vec::new(),
            dead: Vec::new(),
            seen_pairs: HashSet::new(),
            seen_singles: HashSet::new(),
        };

        let odd: Vec<usize> = (0..=n as usize).filter(|i| i % 2 == 1).collect();
        let even: Vec<usize> = (0..=n as usize).filter(|i| i % 2 == 0).collect();
        let cat = |parts: &[&[usize]]| -> Vec<usize> {
            parts.iter().flat_map(|p| p.iter().copied()).collect()
        };
        let seeds = [
            (cat(&[&odd, &even, &odd]), cat(&[&odd])),
            (cat(&[&even, &odd, &even]), cat(&[&even])),
        ];
        let mut queue: VecDeque<WorkItem<F>> = VecDeque::new();
        for (lhs, rhs) in seeds {
            let (c1, d1) = closure.eval_word(&lhs)?;
            let (c2, d2) = closure.eval_word(&rhs)?;
            let a = closure.intern(d1);
            let b = closure.intern(d2);
            queue.push_back(WorkItem::Pair(c1, a, scalar.mul(&c2), b));
        }
        closure.run(&mut queue)?;
        Ok(closure)
    }

    fn eval_word(&mut self, letters: &[usize]) -> Result<(F, Diagram)> {
        let mut scalar = F::one();
        let mut diagram = Diagram::identity(self.n);
        for &g in letters {
            let (s, d) = multiply(&diagram, &self.gens[g], &self.params)?;
            scalar = scalar.mul(&s);
            diagram = d;
        }
        Ok((scalar, diagram))
    }

    fn intern(&mut self, d: Diagram) -> u32 {
        if let Some(&id) = self.ids.get(&d) {
            return id;
        }
        let id = self.diagrams.len() as u32;
        self.diagrams.push(d.clone());
        self.ids.insert(d, id);
        self.parent.push(id);
        self.ratio.push(F::one());
        self.dead.push(false);
        id
    }

    /// Root of x together with the ratio e_x = r * e_root.
    fn find(&mut self, x: u32) -> (u32, F) {
        let mut chain = Vec::new();
        let mut cur = x;
        while self.parent[cur as usize] != cur {
            chain.push(cur);
            cur = self.parent[cur as usize];
        }
        let root = cur;
        let mut acc = F::one();
        for &node in chain.iter().rev() {
            acc = self.ratio[node as usize].mul(&acc);
            self.parent[node as usize] = root;
            self.ratio[node as usize] = acc.clone();
        }
        let r = if x == root {
            F::one()
        } else {
            self.ratio[x as usize].clone()
        };
        (root, r)
    }

    fn is_dead(&mut self, x: u32) -> bool {
        let (root, _) = self.find(x);
        self.dead[root as usize]
    }

    fn mark_dead(&mut self, x: u32, queue: &mut VecDeque<WorkItem<F>>) {
        let (root, _) = self.find(x);
        if !self.dead[root as usize] {
            self.dead[root as usize] = true;
            if self.seen_singles.insert(x) {
                queue.push_back(WorkItem::Single(x));
            }
        }
    }

    /// Processes the worklist and then sweeps every known node, multiplying
    /// its class relation by every generator on both sides, until nothing new
    /// appears.
    fn run(&mut self, queue: &mut VecDeque<WorkItem<F>>) -> Result<()> {
        let mut guard = 0usize;
        loop {
            while let Some(item) = queue.pop_front() {
                guard += 1;
                if guard > 50_000_000 {
                    return Err(Error::QuotientInconsistent(
                        "ideal closure failed to stabilize".into(),
                    ));
                }
                match item {
                    WorkItem::Pair(c1, a, c2, b) => self.process_pair(c1, a, c2, b, queue),
                    WorkItem::Single(a) => self.process_single(a, queue)?,
                }
            }
            let mut changed = false;
            let count = self.diagrams.len();
            for x in 0..count as u32 {
                let (root, r) = self.find(x);
                if self.dead[root as usize] {
                    if self.seen_singles.insert(x) {
                        queue.push_back(WorkItem::Single(x));
                        changed = true;
                    }
                    continue;
                }
                if x == root {
                    continue;
                }
                for g in 0..self.gens.len() {
                    for left in [true, false] {
                        let (s1, xd) = self.mult_gen(g, x, left)?;
                        let (s2, rd) = self.mult_gen(g, root, left)?;
                        let a = self.intern(xd);
                        let b = self.intern(rd);
                        let c2 = r.mul(&s2);
                        if let Some(key) = Self::pair_key(&s1, a, &c2, b) {
                            if self.seen_pairs.insert(key) {
                                queue.push_back(WorkItem::Pair(s1, a, c2, b));
                                changed = true;
                            }
                        } else if s1 != c2 {
                            // single-term vector: a == b with distinct scalars
                            if !self.is_dead(a) {
                                self.mark_dead(a, queue);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed && queue.is_empty() {
                return Ok(());
            }
        }
    }

    fn mult_gen(&mut self, g: usize, x: u32, left: bool) -> Result<(F, Diagram)> {
        let d = self.diagrams[x as usize].clone();
        if left {
            multiply(&self.gens[g], &d, &self.params)
        } else {
            multiply(&d, &self.gens[g], &self.params)
        }
    }

    /// Normalized dedup key for `c1 a = c2 b`; None when a == b.
    fn pair_key(c1: &F, a: u32, c2: &F, b: u32) -> Option<(u32, u32, F)> {
        if a == b {
            None
        } else if a < b {
            Some((a, b, c2.div(c1)))
        } else {
            Some((b, a, c1.div(c2)))
        }
    }

    fn process_pair(&mut self, c1: F, a: u32, c2: F, b: u32, queue: &mut VecDeque<WorkItem<F>>) {
        let a_dead = self.is_dead(a);
        let b_dead = self.is_dead(b);
        if a_dead || b_dead {
            // c1 e_a = c2 e_b with one side in the ideal puts both sides in.
            if !a_dead {
                self.mark_dead(a, queue);
            }
            if !b_dead {
                self.mark_dead(b, queue);
            }
            return;
        }
        if a == b {
            if c1 != c2 {
                self.mark_dead(a, queue);
            }
            return;
        }
        let rho = c2.div(&c1); // e_a = rho e_b
        let (ra, ta) = self.find(a);
        let (rb, tb) = self.find(b);
        if ra == rb {
            if ta != rho.mul(&tb) {
                self.mark_dead(ra, queue);
            }
        } else {
            // e_ra = ta^-1 rho tb e_rb
            let link = ta.inv().expect("ratios are invertible").mul(&rho).mul(&tb);
            self.parent[ra as usize] = rb;
            self.ratio[ra as usize] = link;
        }
    }

    fn process_single(&mut self, a: u32, queue: &mut VecDeque<WorkItem<F>>) -> Result<()> {
        if !self.is_dead(a) {
            let (root, _) = self.find(a);
            self.dead[root as usize] = true;
        }
        for g in 0..self.gens.len() {
            for left in [true, false] {
                let (_, d) = self.mult_gen(g, a, left)?;
                let id = self.intern(d);
                if !self.is_dead(id) {
                    let (root, _) = self.find(id);
                    self.dead[root as usize] = true;
                }
                if self.seen_singles.insert(id) {
                    queue.push_back(WorkItem::Single(id));
                }
            }
        }
        Ok(())
    }

    /// Resolved class data of a diagram: None if the diagram was never
    /// touched by the closure (a singleton class, alive).
    fn resolve(&mut self, d: &Diagram) -> Option<(u32, F, bool)> {
        let id = *self.ids.get(d)?;
        let (root, ratio) = self.find(id);
        Some((root, ratio, self.dead[root as usize]))
    }

    /// Reduces a linear combination of diagrams modulo the ideal: terms
    /// rewrite onto class roots and sum. The vector lies in the ideal exactly
    /// when everything cancels.
    pub fn contains(&mut self, terms: &[(F, Diagram)]) -> bool {
        let mut acc: HashMap<u32, F> = HashMap::new();
        for (c, d) in terms {
            match self.resolve(d) {
                Some((_, _, true)) => {}
                Some((root, ratio, false)) => {
                    let entry = acc.entry(root).or_insert_with(F::zero);
                    *entry = entry.add(&c.mul(&ratio));
                }
                None => {
                    let id = self.intern(d.clone());
                    let entry = acc.entry(id).or_insert_with(F::zero);
                    *entry = entry.add(c);
                }
            }
        }
        acc.values().all(|v| v.is_zero())
    }
}

/// The symplectic blob algebra at size n: the full decorated basis, the ideal
/// closure, and the greedy choice of coset representatives in canonical basis
/// order.
pub struct SymplecticQuotient<F: Field> {
    pub n: u16,
    pub params: ParameterSet<F>,
    /// The full decorated-diagram basis in canonical order.
    pub bprime_basis: Vec<Diagram>,
    /// Quotient basis: the chosen representatives, in canonical order.
    pub reps: Vec<Diagram>,
    rep_index: HashMap<Diagram, u32>,
    /// For every decorated basis diagram: its image as (scalar, rep index),
    /// or None when the diagram lies in the ideal.
    projection: HashMap<Diagram, Option<(F, u32)>>,
}

impl<F: Field> SymplecticQuotient<F> {
    pub fn build(n: u16, params: &ParameterSet<F>) -> Result<SymplecticQuotient<F>> {
        Self::build_with_generator_scalar(n, params, &params.kappa_lr)
    }

    pub fn build_with_generator_scalar(
        n: u16,
        params: &ParameterSet<F>,
        scalar: &F,
    ) -> Result<SymplecticQuotient<F>> {
        let mut closure = IdealClosure::build_with_generator_scalar(n, params, scalar)?;
        let bprime_basis = enumerate_basis(n, Flavor::LrBlob)?;
        // Greedy first-fit in canonical order: a diagram is kept when its
        // class is alive and no earlier member was kept.
        let mut rep_of_root: HashMap<u32, u32> = HashMap::new();
        let mut reps: Vec<Diagram> = Vec::new();
        let mut rep_index: HashMap<Diagram, u32> = HashMap::new();
        let mut resolved: Vec<(u32, F, bool)> = Vec::with_capacity(bprime_basis.len());
        for d in &bprime_basis {
            let id = closure.intern(d.clone());
            let (root, ratio) = closure.find(id);
            let dead = closure.dead[root as usize];
            resolved.push((root, ratio.clone(), dead));
            if !dead && !rep_of_root.contains_key(&root) {
                let idx = reps.len() as u32;
                rep_of_root.insert(root, idx);
                reps.push(d.clone());
                rep_index.insert(d.clone(), idx);
            }
        }
        let mut rep_ratio: HashMap<u32, F> = HashMap::new();
        for (root, idx) in &rep_of_root {
            let id = closure.ids[&reps[*idx as usize]];
            let (r, t) = closure.find(id);
            debug_assert_eq!(r, *root);
            rep_ratio.insert(*root, t);
        }
        let mut projection = HashMap::new();
        for (d, (root, ratio, dead)) in bprime_basis.iter().zip(resolved) {
            let image = if dead {
                None
            } else {
                let idx = rep_of_root[&root];
                let t_rep = &rep_ratio[&root];
                // e_d = ratio e_root and e_rep = t_rep e_root
                Some((ratio.mul(&t_rep.inv().expect("invertible ratio")), idx))
            };
            projection.insert(d.clone(), image);
        }
        Ok(SymplecticQuotient {
            n,
            params: params.clone(),
            bprime_basis,
            reps,
            rep_index,
            projection,
        })
    }

    pub fn dim_bprime(&self) -> usize {
        self.bprime_basis.len()
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ideal_rank(&self) -> usize {
        self.dim_bprime() - self.dim()
    }

    pub fn rep_index_of(&self, d: &Diagram) -> Option<u32> {
        self.rep_index.get(d).copied()
    }

    pub fn is_representative(&self, d: &Diagram) -> bool {
        self.rep_index.contains_key(d)
    }

    /// Projection of a single decorated basis diagram into the quotient:
    /// (scalar, representative index), or None when it lies in the ideal.
    pub fn project(&self, d: &Diagram) -> Result<Option<(F, u32)>> {
        self.projection
            .get(d)
            .cloned()
            .ok_or_else(|| Error::QuotientInconsistent(format!("diagram {d} is not in the basis")))
    }

    /// Product of two representatives, projected back onto the basis.
    pub fn mul(&self, i: usize, j: usize) -> Result<Option<(F, u32)>> {
        self.mul_diagrams(&self.reps[i], &self.reps[j])
    }

    /// Product of arbitrary decorated basis diagrams, projected.
    pub fn mul_diagrams(&self, a: &Diagram, b: &Diagram) -> Result<Option<(F, u32)>> {
        let (s, d) = multiply(a, b, &self.params)?;
        let proj = self.project(&d)?;
        Ok(proj.map(|(t, k)| (s.mul(&t), k)))
    }
}
