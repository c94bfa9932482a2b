//! Subset search for `g`: maximize the size of `|B_q(Z, ·)|` on the target
//! region subject to `|B_q(Z, ·)| ≤ ε` on `E`.
//!
//! Adding a zero shrinks `|B_q|` everywhere, so feasibility is inherited by
//! supersets and the objective only drops; optimal tuples are minimal
//! feasible subsets. The search works on index sets with additive logs.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::disk::log_pseudo_distance;
use crate::potential::SetKernel;

/// Angular samples for the coarse objective on `|z| = R`.
pub(crate) const COARSE_GRID: usize = 256;
const MAX_ROUNDS: usize = 64;
const GAIN: f64 = 1e-12;
const RANDOM_PICK: f64 = 0.3;

/// Where the objective is measured.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Target {
    /// `sup_{|z| ≤ R}`, sampled on the circle `|z| = R`.
    Ball(f64),
    /// The single point `z = 0`.
    Origin,
}

pub(crate) struct Problem<'a> {
    pub k: SetKernel<'a>,
    pub log_eps: f64,
    n_obj: usize,
    /// `log|q|` at the objective points.
    obj_q: Vec<f64>,
    /// `log d(w_t, e_j)` at `j * n_obj + t`.
    obj_d: Vec<f64>,
}

/// A subset with its cached profiles.
#[derive(Clone)]
struct State {
    in_s: Vec<bool>,
    members: Vec<usize>,
    /// `log|q(e_i)| + Σ_{j ∈ S, j ≠ i} log d(e_i, e_j)`.
    prof: Vec<f64>,
    obj: Vec<f64>,
}

impl<'a> Problem<'a> {
    pub fn new(k: SetKernel<'a>, log_eps: f64, target: Target) -> Self {
        let pts: Vec<Complex64> = match target {
            Target::Ball(r) => {
                (0..COARSE_GRID).map(|t| Complex64::from_polar(r, TAU * t as f64 / COARSE_GRID as f64)).collect()
            }
            Target::Origin => vec![Complex64::new(0.0, 0.0)],
        };
        let weight = k.set.weight();
        let obj_q = pts.iter().map(|&w| weight.log_abs(w)).collect();
        let mut obj_d = Vec::with_capacity(k.len() * pts.len());
        for e in k.set.points() {
            for &w in &pts {
                obj_d.push(log_pseudo_distance(w, e.z()));
            }
        }
        Problem { k, log_eps, n_obj: pts.len(), obj_q, obj_d }
    }

    fn n(&self) -> usize {
        self.k.len()
    }

    fn od(&self, j: usize) -> &[f64] {
        &self.obj_d[j * self.n_obj..(j + 1) * self.n_obj]
    }

    fn empty_state(&self) -> State {
        State { in_s: vec![false; self.n()], members: Vec::new(), prof: self.k.log_q.clone(), obj: self.obj_q.clone() }
    }

    fn state_of(&self, idx: &[usize]) -> State {
        let mut s = self.empty_state();
        for &i in idx {
            self.add(&mut s, i);
        }
        s
    }

    fn add(&self, s: &mut State, c: usize) {
        debug_assert!(!s.in_s[c]);
        for i in 0..self.n() {
            if i != c {
                s.prof[i] += self.k.log_d(i, c);
            }
        }
        for (o, d) in s.obj.iter_mut().zip(self.od(c)) {
            *o += d;
        }
        s.in_s[c] = true;
        s.members.push(c);
    }

    fn remove(&self, s: &mut State, j: usize) {
        for i in 0..self.n() {
            if i != j {
                s.prof[i] -= self.k.log_d(i, j);
            }
        }
        for (o, d) in s.obj.iter_mut().zip(self.od(j)) {
            *o -= d;
        }
        s.in_s[j] = false;
        s.members.retain(|&m| m != j);
    }

    /// Largest `log|B_q|` over candidates outside `S`; `-inf` when `S = E`.
    fn violation(&self, s: &State) -> (f64, usize) {
        let mut best = f64::NEG_INFINITY;
        let mut arg = usize::MAX;
        for i in 0..self.n() {
            if !s.in_s[i] && s.prof[i] > best {
                best = s.prof[i];
                arg = i;
            }
        }
        (best, arg)
    }

    fn feasible(&self, s: &State) -> bool {
        self.violation(s).0 <= self.log_eps
    }

    fn value(obj: &[f64]) -> f64 {
        obj.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Objective after removing member `j`, if the result stays feasible.
    fn try_remove(&self, s: &State, j: usize) -> Option<f64> {
        for i in 0..self.n() {
            let v = if i == j {
                s.prof[j]
            } else if s.in_s[i] {
                continue;
            } else {
                s.prof[i] - self.k.log_d(i, j)
            };
            if v > self.log_eps {
                return None;
            }
        }
        let od = self.od(j);
        Some(s.obj.iter().zip(od).map(|(o, d)| o - d).fold(f64::NEG_INFINITY, f64::max))
    }

    /// Objective after replacing member `j` by outsider `c`, if feasible.
    fn try_swap(&self, s: &State, j: usize, c: usize) -> Option<f64> {
        for i in 0..self.n() {
            if i == c || (s.in_s[i] && i != j) {
                continue;
            }
            let v = if i == j {
                s.prof[j] + self.k.log_d(j, c)
            } else {
                s.prof[i] - self.k.log_d(i, j) + self.k.log_d(i, c)
            };
            if v > self.log_eps {
                return None;
            }
        }
        let (oj, oc) = (self.od(j), self.od(c));
        Some(s.obj.iter().zip(oj.iter().zip(oc)).map(|(o, (a, b))| o - a + b).fold(f64::NEG_INFINITY, f64::max))
    }

    /// Adds the worst violator (or, with probability `RANDOM_PICK` under a
    /// generator, a random violator) until feasible.
    fn complete(&self, s: &mut State, mut rng: Option<&mut ChaCha8Rng>) {
        loop {
            let (v, arg) = self.violation(s);
            if v <= self.log_eps {
                return;
            }
            let mut pick = arg;
            if let Some(r) = rng.as_deref_mut() {
                if r.gen::<f64>() < RANDOM_PICK {
                    let viol: Vec<usize> = (0..self.n()).filter(|&i| !s.in_s[i] && s.prof[i] > self.log_eps).collect();
                    pick = viol[r.gen_range(0..viol.len())];
                }
            }
            self.add(s, pick);
        }
    }

    /// Removal and swap moves until neither improves the objective.
    fn polish(&self, s: &mut State) {
        for _ in 0..MAX_ROUNDS {
            let mut changed = false;
            // best feasible removal
            loop {
                let mut best: Option<(f64, usize)> = None;
                let mut members = s.members.clone();
                members.sort_unstable();
                for &j in &members {
                    if let Some(v) = self.try_remove(s, j) {
                        if best.map_or(true, |(b, _)| v > b) {
                            best = Some((v, j));
                        }
                    }
                }
                match best {
                    Some((_, j)) => {
                        self.remove(s, j);
                        changed = true;
                    }
                    None => break,
                }
            }
            let mut members = s.members.clone();
            members.sort_unstable();
            for j in members {
                let current = Self::value(&s.obj);
                let mut best: Option<(f64, usize)> = None;
                for c in 0..self.n() {
                    if s.in_s[c] {
                        continue;
                    }
                    if let Some(v) = self.try_swap(s, j, c) {
                        if v > current + GAIN && best.map_or(true, |(b, _)| v > b) {
                            best = Some((v, c));
                        }
                    }
                }
                if let Some((_, c)) = best {
                    self.remove(s, j);
                    self.add(s, c);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn finish(&self, s: &State) -> Candidate {
        let mut idx = s.members.clone();
        idx.sort_unstable();
        Candidate { coarse: Self::value(&s.obj), indices: idx }
    }

    /// Local search from a start set (completed to feasibility first).
    pub fn local(&self, start: &[usize], rng: Option<&mut ChaCha8Rng>) -> Candidate {
        let mut s = self.state_of(start);
        self.complete(&mut s, rng);
        self.polish(&mut s);
        self.finish(&s)
    }

    /// Shortest feasible prefix of `order`, then polished.
    pub fn prefix(&self, order: &[usize]) -> Candidate {
        let mut s = self.empty_state();
        for &i in order {
            if self.feasible(&s) {
                break;
            }
            self.add(&mut s, i);
        }
        self.complete(&mut s, None);
        self.polish(&mut s);
        self.finish(&s)
    }

    /// Seeded randomized restarts, run in parallel; results in restart order.
    pub fn restarts(&self, seed: u64, count: usize) -> Vec<Candidate> {
        (0..count as u64)
            .into_par_iter()
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(r + 1);
                let start = rng.gen_range(0..self.n());
                self.local(&[start], Some(&mut rng))
            })
            .collect()
    }

    /// Every feasible subset none of whose proper prefixes (in index order)
    /// is feasible. Contains every minimal feasible subset.
    pub fn enumerate_feasible(&self) -> Vec<Candidate> {
        let mut out = Vec::new();
        let mut s = self.empty_state();
        self.dfs(&mut s, 0, &mut out);
        out
    }

    fn dfs(&self, s: &mut State, from: usize, out: &mut Vec<Candidate>) {
        if self.feasible(s) {
            out.push(self.finish(s));
            return;
        }
        for c in from..self.n() {
            self.add(s, c);
            self.dfs(s, c + 1, out);
            self.remove(s, c);
        }
    }

    /// The empty tuple is feasible (`|q| ≤ ε` on `E`); it then beats every
    /// other tuple.
    pub fn empty_feasible(&self) -> bool {
        self.feasible(&self.empty_state())
    }

    pub fn candidate(&self, idx: &[usize]) -> Candidate {
        self.finish(&self.state_of(idx))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Candidate {
    pub coarse: f64,
    pub indices: Vec<usize>,
}

/// Sorts by coarse value (descending), then indices, and removes duplicates.
pub(crate) fn rank(mut c: Vec<Candidate>) -> Vec<Candidate> {
    c.sort_by(|a, b| b.coarse.total_cmp(&a.coarse).then_with(|| a.indices.cmp(&b.indices)));
    c.dedup_by(|a, b| a.indices == b.indices);
    c
}
