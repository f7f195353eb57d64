//! Annular front diagrams as cyclic words of elementary tangles.
//!
//! A word is read left to right around the annulus starting at the seam
//! `x = 0`. Strand positions are numbered `1..=N` from top to bottom;
//! `s<m>` crosses strands `m` and `m+1`, `l<m>` opens a left cusp whose
//! branches become strands `m` (upper) and `m+1` (lower), and `r<m>` closes
//! strands `m` and `m+1` in a right cusp.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrontError {
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("strand count mismatch at letter {position}: {msg}")]
    StrandMismatch { position: usize, msg: String },
    #[error("orientation mismatch at letter {position}")]
    Orientation { position: usize },
    #[error("component c{component} has no {what}")]
    UnknownComponent { component: usize, what: &'static str },
    #[error("expected {expected} orientation/potential values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("Maslov base value {value} for c{component} has the wrong parity")]
    Parity { component: usize, value: i64 },
    #[error("move does not apply: {0}")]
    PatternMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Sigma(u32),
    Left(u32),
    Right(u32),
}

impl Letter {
    pub fn index(self) -> u32 {
        match self {
            Letter::Sigma(m) | Letter::Left(m) | Letter::Right(m) => m,
        }
    }

    pub fn is_cusp(self) -> bool {
        !matches!(self, Letter::Sigma(_))
    }

    /// Strand count after this letter, if it is valid on `n` strands.
    pub fn apply_count(self, n: usize) -> Option<usize> {
        let m = self.index() as usize;
        match self {
            Letter::Sigma(_) => (m >= 1 && m < n).then_some(n),
            Letter::Left(_) => (m >= 1 && m <= n + 1).then_some(n + 2),
            Letter::Right(_) => (m >= 1 && n >= 2 && m < n).then_some(n - 2),
        }
    }

    fn with_index(self, m: u32) -> Letter {
        match self {
            Letter::Sigma(_) => Letter::Sigma(m),
            Letter::Left(_) => Letter::Left(m),
            Letter::Right(_) => Letter::Right(m),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Sigma(m) => write!(f, "s{m}"),
            Letter::Left(m) => write!(f, "l{m}"),
            Letter::Right(m) => write!(f, "r{m}"),
        }
    }
}

/// Direction of a strand segment along the x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Right,
    Left,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Right => Dir::Left,
            Dir::Left => Dir::Right,
        }
    }

    /// 0 for rightward, 1 for leftward; any Maslov potential reduces to this mod 2.
    pub fn parity(self) -> i64 {
        match self {
            Dir::Right => 0,
            Dir::Left => 1,
        }
    }
}

/// A validated cyclic word with its strand count at the seam.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrontWord {
    base: usize,
    letters: Vec<Letter>,
}

impl FrontWord {
    pub fn new(base: usize, letters: Vec<Letter>) -> Result<Self, FrontError> {
        let mut n = base;
        for (i, l) in letters.iter().enumerate() {
            n = l.apply_count(n).ok_or_else(|| FrontError::StrandMismatch {
                position: i + 1,
                msg: format!("{l} is not defined on {n} strands"),
            })?;
        }
        if n != base {
            return Err(FrontError::StrandMismatch {
                position: letters.len(),
                msg: format!("word ends with {n} strands but starts with {base}"),
            });
        }
        Ok(FrontWord { base, letters })
    }

    pub fn empty(base: usize) -> Self {
        FrontWord { base, letters: Vec::new() }
    }

    /// The basic front `A_m`: closure of `σ_1 ⋯ σ_{m-1}` on `m` strands.
    pub fn basic(m: u32) -> Self {
        FrontWord { base: m as usize, letters: (1..m).map(Letter::Sigma).collect() }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Strand count of each slice; slice `i` sits just before letter `i`.
    /// An empty word has the single seam slice.
    pub fn slice_counts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.letters.len().max(1));
        let mut n = self.base;
        out.push(n);
        for l in self.letters.iter().take(self.letters.len().saturating_sub(1)) {
            n = l.apply_count(n).unwrap();
            out.push(n);
        }
        out
    }

    /// Sum of the strand counts after each letter.
    pub fn word_area(&self) -> usize {
        let mut n = self.base;
        let mut area = 0;
        for l in &self.letters {
            n = l.apply_count(n).unwrap();
            area += n;
        }
        area
    }

    pub fn cusp_count(&self) -> usize {
        self.letters.iter().filter(|l| l.is_cusp()).count()
    }

    pub fn right_cusp_count(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, Letter::Right(_))).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.letters.len() - self.cusp_count()
    }

    /// Moves the first letter to the end.
    pub fn rotate(&self, k: usize) -> FrontWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let base = self.slice_counts()[k];
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        FrontWord { base, letters }
    }

    /// Closed traversals of the diagram; see [`Component`].
    pub fn components(&self) -> Vec<Component> {
        trace_components(self)
    }
}

impl fmt::Display for FrontWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}] {}", self.base, ls.join(" "))
    }
}

/// A point of the diagram between letters: `(slice, position)`, 0-based.
pub type SlicePoint = (usize, usize);

/// One component, traversed rightward from its base point: the lowest point
/// it has in the first slice it meets. Components are ordered by base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Slice points in traversal order with the direction of travel.
    pub points: Vec<(SlicePoint, Dir)>,
    /// Cusps passed from the upper to the lower branch.
    pub down_cusps: usize,
    /// Cusps passed from the lower to the upper branch.
    pub up_cusps: usize,
}

impl Component {
    pub fn base(&self) -> SlicePoint {
        self.points[0].0
    }

    /// Net number of times the traversal winds around the annulus.
    pub fn winding(&self) -> i64 {
        let mut w = 0;
        for (p, d) in &self.points {
            if p.0 == 0 {
                w += if *d == Dir::Right { 1 } else { -1 };
            }
        }
        w
    }
}

/// Next slice point moving in `dir`, and the direction afterwards.
fn step(word: &FrontWord, counts: &[usize], p: SlicePoint, dir: Dir) -> (SlicePoint, Dir, Option<bool>) {
    let n = word.letters.len();
    if n == 0 {
        return (p, dir, None);
    }
    let (i, k) = p;
    match dir {
        Dir::Right => {
            let next = (i + 1) % n;
            let letter = word.letters[i];
            let m = letter.index() as usize - 1;
            match letter {
                Letter::Sigma(_) => {
                    let k2 = if k == m { m + 1 } else if k == m + 1 { m } else { k };
                    ((next, k2), Dir::Right, None)
                }
                Letter::Left(_) => ((next, if k < m { k } else { k + 2 }), Dir::Right, None),
                Letter::Right(_) => {
                    if k == m {
                        ((i, m + 1), Dir::Left, Some(true))
                    } else if k == m + 1 {
                        ((i, m), Dir::Left, Some(false))
                    } else {
                        ((next, if k < m { k } else { k - 2 }), Dir::Right, None)
                    }
                }
            }
        }
        Dir::Left => {
            let prev = (i + n - 1) % n;
            let letter = word.letters[prev];
            let m = letter.index() as usize - 1;
            let _ = counts;
            match letter {
                Letter::Sigma(_) => {
                    let k2 = if k == m { m + 1 } else if k == m + 1 { m } else { k };
                    ((prev, k2), Dir::Left, None)
                }
                Letter::Left(_) => {
                    if k == m {
                        ((i, m + 1), Dir::Right, Some(true))
                    } else if k == m + 1 {
                        ((i, m), Dir::Right, Some(false))
                    } else {
                        ((prev, if k < m { k } else { k - 2 }), Dir::Left, None)
                    }
                }
                Letter::Right(_) => ((prev, if k < m { k } else { k + 2 }), Dir::Left, None),
            }
        }
    }
}

fn trace_from(word: &FrontWord, counts: &[usize], start: SlicePoint) -> Component {
    let mut comp = Component { points: Vec::new(), down_cusps: 0, up_cusps: 0 };
    let mut p = start;
    let mut d = Dir::Right;
    loop {
        comp.points.push((p, d));
        let (q, d2, cusp) = step(word, counts, p, d);
        match cusp {
            Some(true) => comp.down_cusps += 1,
            Some(false) => comp.up_cusps += 1,
            None => {}
        }
        p = q;
        d = d2;
        if p == start && d == Dir::Right {
            return comp;
        }
    }
}

fn trace_components(word: &FrontWord) -> Vec<Component> {
    let counts = word.slice_counts();
    let mut seen: Vec<Vec<bool>> = counts.iter().map(|&c| vec![false; c]).collect();
    let mut out = Vec::new();
    for s in 0..counts.len() {
        for k in 0..counts[s] {
            if seen[s][k] {
                continue;
            }
            let first = trace_from(word, &counts, (s, k));
            let lowest = first.points.iter().filter(|(p, _)| p.0 == s).map(|(p, _)| p.1).max().unwrap();
            for ((s2, k2), _) in &first.points {
                seen[*s2][*k2] = true;
            }
            out.push(if lowest == k { first } else { trace_from(word, &counts, (s, lowest)) });
        }
    }
    out.sort_by_key(|c| c.base());
    out
}

/// A front with an orientation on every strand segment.
///
/// Stored as the directions at the seam plus the direction of the upper
/// branch of each left cusp; slice directions are derived by propagation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedFront {
    word: FrontWord,
    seam: Vec<Dir>,
    upper: Vec<Option<Dir>>,
}

/// Classical invariants of an oriented front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalInvariants {
    pub writhe: i64,
    pub tb: i64,
    pub rotation: i64,
    pub component_rotation: Vec<i64>,
    pub cusps: usize,
    pub right_cusps: usize,
    pub down_cusps: usize,
    pub up_cusps: usize,
}

impl OrientedFront {
    /// Orients each component by the direction of its base segment
    /// (`Dir::Right` follows the traversal of [`Component`]).
    pub fn new(word: FrontWord, orient: &[Dir]) -> Result<Self, FrontError> {
        let comps = word.components();
        if comps.len() != orient.len() {
            return Err(FrontError::Arity { expected: comps.len(), got: orient.len() });
        }
        let counts = word.slice_counts();
        let mut dirs: Vec<Vec<Dir>> = counts.iter().map(|&c| vec![Dir::Right; c]).collect();
        for (comp, &o) in comps.iter().zip(orient) {
            for ((s, k), d) in &comp.points {
                dirs[*s][*k] = if o == Dir::Right { *d } else { d.flip() };
            }
        }
        let n = word.letters.len();
        let upper = word
            .letters
            .iter()
            .enumerate()
            .map(|(i, l)| match l {
                Letter::Left(m) => Some(dirs[(i + 1) % n][*m as usize - 1]),
                _ => None,
            })
            .collect();
        Ok(OrientedFront { seam: dirs[0].clone(), word, upper })
    }

    /// Every component oriented along its base traversal.
    pub fn with_default_orientation(word: FrontWord) -> Self {
        let k = word.components().len();
        Self::new(word, &vec![Dir::Right; k]).unwrap()
    }

    /// Builds from seam directions and left-cusp upper-branch directions,
    /// checking that right cusps join oppositely oriented strands and that the
    /// directions close up at the seam.
    pub fn from_annotated(word: FrontWord, seam: Vec<Dir>, upper: Vec<Option<Dir>>) -> Result<Self, FrontError> {
        if seam.len() != word.base || upper.len() != word.letters.len() {
            return Err(FrontError::Arity { expected: word.base, got: seam.len() });
        }
        let f = OrientedFront { word, seam, upper };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), FrontError> {
        let mut cur = self.seam.clone();
        for (i, l) in self.word.letters.iter().enumerate() {
            if !apply_dirs(&mut cur, *l, self.upper[i]) {
                return Err(FrontError::Orientation { position: i + 1 });
            }
        }
        if cur != self.seam {
            return Err(FrontError::Orientation { position: self.word.letters.len() });
        }
        Ok(())
    }

    pub fn word(&self) -> &FrontWord {
        &self.word
    }

    pub fn seam(&self) -> &[Dir] {
        &self.seam
    }

    pub fn upper(&self) -> &[Option<Dir>] {
        &self.upper
    }

    /// Directions in every slice (slice `i` before letter `i`).
    pub fn slice_dirs(&self) -> Vec<Vec<Dir>> {
        let n = self.word.letters.len();
        let mut out = Vec::with_capacity(n.max(1));
        let mut cur = self.seam.clone();
        out.push(cur.clone());
        for i in 0..n.saturating_sub(1) {
            apply_dirs(&mut cur, self.word.letters[i], self.upper[i]);
            out.push(cur.clone());
        }
        out
    }

    /// Orientation of each component relative to its base traversal.
    pub fn component_orientation(&self) -> Vec<Dir> {
        let dirs = self.slice_dirs();
        self.word
            .components()
            .iter()
            .map(|c| {
                let ((s, k), d) = c.points[0];
                if dirs[s][k] == d {
                    Dir::Right
                } else {
                    Dir::Left
                }
            })
            .collect()
    }

    /// Sign of the crossing at letter `i`: +1 iff both strands point the same way.
    pub fn crossing_sign(&self, dirs: &[Vec<Dir>], i: usize) -> i64 {
        match self.word.letters[i] {
            Letter::Sigma(m) => {
                let s = &dirs[i];
                if s[m as usize - 1] == s[m as usize] {
                    1
                } else {
                    -1
                }
            }
            _ => 0,
        }
    }

    pub fn writhe(&self) -> i64 {
        let dirs = self.slice_dirs();
        (0..self.word.letters.len()).map(|i| self.crossing_sign(&dirs, i)).sum()
    }

    pub fn classical_invariants(&self) -> ClassicalInvariants {
        let writhe = self.writhe();
        let orient = self.component_orientation();
        let comps = self.word.components();
        let mut component_rotation = Vec::new();
        let (mut down, mut up) = (0, 0);
        for (c, o) in comps.iter().zip(&orient) {
            let (d, u) = if *o == Dir::Right { (c.down_cusps, c.up_cusps) } else { (c.up_cusps, c.down_cusps) };
            down += d;
            up += u;
            component_rotation.push((d as i64 - u as i64) / 2);
        }
        let cusps = self.word.cusp_count();
        let right_cusps = self.word.right_cusp_count();
        ClassicalInvariants {
            writhe,
            tb: writhe - right_cusps as i64,
            rotation: (down as i64 - up as i64) / 2,
            component_rotation,
            cusps,
            right_cusps,
            down_cusps: down,
            up_cusps: up,
        }
    }

    pub fn tb(&self) -> i64 {
        self.writhe() - self.word.right_cusp_count() as i64
    }

    /// Reverses every component.
    pub fn reversed(&self) -> OrientedFront {
        OrientedFront {
            word: self.word.clone(),
            seam: self.seam.iter().map(|d| d.flip()).collect(),
            upper: self.upper.iter().map(|d| d.map(Dir::flip)).collect(),
        }
    }

    /// Cyclic rotation by `k` letters.
    pub fn rotate(&self, k: usize) -> OrientedFront {
        let n = self.word.letters.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let seam = self.slice_dirs()[k].clone();
        let mut upper = self.upper[k..].to_vec();
        upper.extend_from_slice(&self.upper[..k]);
        OrientedFront { word: self.word.rotate(k), seam, upper }
    }

    /// Replaces `len` letters starting at `start` with `new`, keeping the
    /// orientation outside the replaced segment. Directions of new left cusps
    /// are chosen so the segment joins up with its surroundings.
    pub fn replace(&self, start: usize, len: usize, new: &[Letter]) -> Result<OrientedFront, FrontError> {
        let n = self.word.letters.len();
        if start + len > n {
            return Err(FrontError::PatternMismatch("segment out of range".into()));
        }
        let mut letters = self.word.letters[..start].to_vec();
        letters.extend_from_slice(new);
        letters.extend_from_slice(&self.word.letters[start + len..]);
        let word = FrontWord::new(self.word.base, letters)
            .map_err(|e| FrontError::PatternMismatch(e.to_string()))?;

        let dirs = self.slice_dirs();
        let before = if n == 0 { self.seam.clone() } else if start < n { dirs[start].clone() } else { self.seam.clone() };
        let after = if start + len < n { dirs[start + len].clone() } else { self.seam.clone() };
        let unknown: Vec<usize> = new
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, Letter::Left(_)))
            .map(|(i, _)| i)
            .collect();
        if unknown.len() > 12 {
            return Err(FrontError::PatternMismatch("too many new cusps".into()));
        }
        for mask in 0u32..(1 << unknown.len()) {
            let mut seg_upper: Vec<Option<Dir>> = vec![None; new.len()];
            for (b, &i) in unknown.iter().enumerate() {
                seg_upper[i] = Some(if mask >> b & 1 == 0 { Dir::Right } else { Dir::Left });
            }
            let mut cur = before.clone();
            let ok = new.iter().zip(&seg_upper).all(|(l, u)| apply_dirs(&mut cur, *l, *u));
            if ok && cur == after {
                let mut upper = self.upper[..start].to_vec();
                upper.extend(seg_upper);
                upper.extend_from_slice(&self.upper[start + len..]);
                let seam = self.seam.clone();
                return OrientedFront::from_annotated(word, seam, upper);
            }
        }
        Err(FrontError::Orientation { position: start + 1 })
    }

    /// Applies a word move, carrying the orientation along.
    pub fn apply_move(&self, mv: Move) -> Result<OrientedFront, FrontError> {
        if let Move::CyclicRotate = mv {
            return Ok(self.rotate(1));
        }
        let (start, len, new) = move_rewrite(&self.word, mv)?;
        self.replace(start, len, &new)
    }

    /// Every move that applies here. Insertions (`Lr1Insert`, `Lr2Expand`)
    /// grow the word and are only listed when `with_inserts` is set.
    pub fn available_moves(&self, with_inserts: bool) -> Vec<Move> {
        let w = &self.word;
        let n = w.len();
        let mut out = vec![Move::CyclicRotate];
        for i in 0..n {
            out.extend([Move::FarCommute(i), Move::Braid(i), Move::Lr3(i), Move::Lr1(i), Move::Lr2(i)]);
            if with_inserts && w.letters[i].is_cusp() {
                out.push(Move::Lr2Expand { at: i, below: false });
                out.push(Move::Lr2Expand { at: i, below: true });
            }
        }
        if with_inserts {
            let counts = w.slice_counts();
            for at in 0..=n {
                let strands = counts.get(at).copied().unwrap_or(w.base);
                for strand in 1..=strands as u32 {
                    out.push(Move::Lr1Insert { at, strand, mirror: false });
                    out.push(Move::Lr1Insert { at, strand, mirror: true });
                }
            }
        }
        out.retain(|m| self.apply_move(*m).is_ok());
        out
    }
}

/// Updates slice directions across one letter; false if a right cusp joins
/// equally oriented strands.
fn apply_dirs(cur: &mut Vec<Dir>, l: Letter, upper: Option<Dir>) -> bool {
    let m = l.index() as usize - 1;
    match l {
        Letter::Sigma(_) => {
            cur.swap(m, m + 1);
            true
        }
        Letter::Left(_) => {
            let u = upper.unwrap_or(Dir::Right);
            cur.insert(m, u.flip());
            cur.insert(m, u);
            true
        }
        Letter::Right(_) => {
            if cur[m] == cur[m + 1] {
                return false;
            }
            cur.drain(m..m + 2);
            true
        }
    }
}

/// Maslov potential: an integer per slice point, constant along strands and
/// increasing by one from the lower to the upper branch of each cusp.
/// Values on component `c` are meaningful modulo `modulus[c]` (0 = integers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaslovAssignment {
    pub values: Vec<Vec<i64>>,
    pub component_of: Vec<Vec<usize>>,
    pub modulus: Vec<u64>,
}

impl MaslovAssignment {
    pub fn slice(&self, i: usize) -> &[i64] {
        &self.values[i]
    }
}

/// Propagates `base_values[c]` from the base point of each component.
/// Each base value must have the parity of its segment's direction.
pub fn maslov(f: &OrientedFront, base_values: &[i64]) -> Result<MaslovAssignment, FrontError> {
    let comps = f.word.components();
    if comps.len() != base_values.len() {
        return Err(FrontError::Arity { expected: comps.len(), got: base_values.len() });
    }
    let dirs = f.slice_dirs();
    let counts = f.word.slice_counts();
    let mut values: Vec<Vec<i64>> = counts.iter().map(|&c| vec![0; c]).collect();
    let mut component_of: Vec<Vec<usize>> = counts.iter().map(|&c| vec![0; c]).collect();
    let inv = f.classical_invariants();
    for (ci, (comp, &v0)) in comps.iter().zip(base_values).enumerate() {
        let (s, k) = comp.base();
        if v0.rem_euclid(2) != dirs[s][k].parity() {
            return Err(FrontError::Parity { component: ci + 1, value: v0 });
        }
        let mut v = v0;
        for &((s, k), d) in &comp.points {
            values[s][k] = v;
            component_of[s][k] = ci;
            match step(&f.word, &counts, (s, k), d).2 {
                Some(true) => v -= 1,
                Some(false) => v += 1,
                None => {}
            }
        }
    }
    let modulus = inv.component_rotation.iter().map(|r| 2 * r.unsigned_abs()).collect();
    Ok(MaslovAssignment { values, component_of, modulus })
}

/// Potential with base value 0 on rightward base segments and 1 on leftward ones.
pub fn default_maslov(f: &OrientedFront) -> MaslovAssignment {
    let dirs = f.slice_dirs();
    let base: Vec<i64> = f
        .word
        .components()
        .iter()
        .map(|c| {
            let (s, k) = c.base();
            dirs[s][k].parity()
        })
        .collect();
    maslov(f, &base).expect("default potential has the right parity")
}

/// `f` stacked above `g`.
pub fn stack(f: &OrientedFront, g: &OrientedFront) -> OrientedFront {
    let shift = f.word.base as u32;
    let mut letters = f.word.letters.clone();
    letters.extend(g.word.letters.iter().map(|l| l.with_index(l.index() + shift)));
    let mut seam = f.seam.clone();
    seam.extend_from_slice(&g.seam);
    let mut upper = f.upper.clone();
    upper.extend_from_slice(&g.upper);
    OrientedFront {
        word: FrontWord { base: f.word.base + g.word.base, letters },
        seam,
        upper,
    }
}

/// `A_m` for `m > 0`, `A_{-m}` (all strands leftward) for `m < 0`.
pub fn basic_front(m: i32) -> OrientedFront {
    assert!(m != 0);
    let w = FrontWord::basic(m.unsigned_abs());
    let d = if m > 0 { Dir::Right } else { Dir::Left };
    let n = w.base;
    let k = w.letters.len();
    OrientedFront { word: w, seam: vec![d; n], upper: vec![None; k] }
}

/// Stack of basic fronts, first factor on top.
pub fn basic_product(factors: &[i32]) -> OrientedFront {
    factors.iter().fold(
        OrientedFront { word: FrontWord::empty(0), seam: Vec::new(), upper: Vec::new() },
        |acc, &m| stack(&acc, &basic_front(m)),
    )
}

/// Local moves on front words. Positions index letters (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Move the first letter to the end.
    CyclicRotate,
    /// Swap letters `i` and `i+1` when they touch disjoint strands.
    FarCommute(usize),
    /// `σ_a σ_{a+1} σ_a ↔ σ_{a+1} σ_a σ_{a+1}` at letters `i..i+3`.
    Braid(usize),
    /// Legendrian type III move; on front words this is the braid relation.
    Lr3(usize),
    /// Remove a type I loop `l_m σ_{m+1} r_m` or `l_{m+1} σ_m r_{m+1}` at `i`.
    Lr1(usize),
    /// Insert a type I loop on the strand at 1-based position `strand`
    /// in the slice before letter `at`.
    Lr1Insert { at: usize, strand: u32, mirror: bool },
    /// Pull a strand off a cusp tip: the three-letter patterns
    /// `l_m σ_{m+1} σ_m`, `l_{m+1} σ_m σ_{m+1}`, `σ_m σ_{m+1} r_m`,
    /// `σ_{m+1} σ_m r_{m+1}` at `i` collapse to a single cusp.
    Lr2(usize),
    /// Push the neighbouring strand (above, or below) through the cusp at `at`.
    Lr2Expand { at: usize, below: bool },
}

/// Applies a move to an unoriented word.
pub fn apply_move(f: &FrontWord, mv: Move) -> Result<FrontWord, FrontError> {
    if let Move::CyclicRotate = mv {
        return Ok(f.rotate(1));
    }
    let (start, len, new) = move_rewrite(f, mv)?;
    let mut letters = f.letters[..start].to_vec();
    letters.extend(new);
    letters.extend_from_slice(&f.letters[start + len..]);
    FrontWord::new(f.base, letters).map_err(|e| FrontError::PatternMismatch(e.to_string()))
}

fn mismatch(what: &str) -> FrontError {
    FrontError::PatternMismatch(what.to_string())
}

/// Commutes `x y` (with `y` indexed after `x`, `n` strands before `x`) to
/// `y' x'`, if the letters touch disjoint strands.
pub fn commute_pair(x: Letter, y: Letter) -> Option<(Letter, Letter)> {
    use Letter::*;
    match (x, y) {
        (Sigma(a), Sigma(b)) => (a.abs_diff(b) >= 2).then_some((Sigma(b), Sigma(a))),
        (Sigma(a), Left(m)) => {
            if m <= a {
                Some((Left(m), Sigma(a + 2)))
            } else if m >= a + 2 {
                Some((Left(m), Sigma(a)))
            } else {
                None
            }
        }
        (Sigma(a), Right(m)) => {
            if m + 2 <= a {
                Some((Right(m), Sigma(a - 2)))
            } else if m >= a + 2 {
                Some((Right(m), Sigma(a)))
            } else {
                None
            }
        }
        (Left(m), Sigma(b)) => {
            if b + 2 <= m {
                Some((Sigma(b), Left(m)))
            } else if b >= m + 2 {
                Some((Sigma(b - 2), Left(m)))
            } else {
                None
            }
        }
        (Right(m), Sigma(b)) => {
            if b + 2 <= m {
                Some((Sigma(b), Right(m)))
            } else if b >= m {
                Some((Sigma(b + 2), Right(m)))
            } else {
                None
            }
        }
        (Left(m), Left(k)) => {
            if k <= m {
                Some((Left(k), Left(m + 2)))
            } else if k >= m + 2 {
                Some((Left(k - 2), Left(m)))
            } else {
                None
            }
        }
        (Right(m), Right(k)) => {
            if k + 2 <= m {
                Some((Right(k), Right(m - 2)))
            } else if k >= m {
                Some((Right(k + 2), Right(m)))
            } else {
                None
            }
        }
        (Left(m), Right(k)) => {
            if k + 2 <= m {
                Some((Right(k), Left(m - 2)))
            } else if k >= m + 2 {
                Some((Right(k - 2), Left(m)))
            } else {
                None
            }
        }
        (Right(m), Left(k)) => {
            if k <= m {
                Some((Left(k), Right(m + 2)))
            } else {
                Some((Left(k + 2), Right(m)))
            }
        }
    }
}

/// The segment `(start, len)` a move rewrites and its replacement.
fn move_rewrite(f: &FrontWord, mv: Move) -> Result<(usize, usize, Vec<Letter>), FrontError> {
    use Letter::*;
    let l = &f.letters;
    let get = |i: usize, k: usize| -> Result<&[Letter], FrontError> {
        l.get(i..i + k).ok_or_else(|| mismatch("position out of range"))
    };
    match mv {
        Move::CyclicRotate => unreachable!(),
        Move::FarCommute(i) => {
            let s = get(i, 2)?;
            let (a, b) = commute_pair(s[0], s[1]).ok_or_else(|| mismatch("letters do not commute"))?;
            Ok((i, 2, vec![a, b]))
        }
        Move::Braid(i) | Move::Lr3(i) => match get(i, 3)? {
            [Sigma(a), Sigma(b), Sigma(c)] if a == c && *b == a + 1 => Ok((i, 3, vec![Sigma(*b), Sigma(*a), Sigma(*b)])),
            [Sigma(a), Sigma(b), Sigma(c)] if a == c && *a == b + 1 => Ok((i, 3, vec![Sigma(*b), Sigma(*a), Sigma(*b)])),
            _ => Err(mismatch("no braid pattern")),
        },
        Move::Lr1(i) => match get(i, 3)? {
            [Left(m), Sigma(b), Right(k)] if m == k && (*b == m + 1 || *b + 1 == *m) => Ok((i, 3, vec![])),
            _ => Err(mismatch("no type I loop")),
        },
        Move::Lr1Insert { at, strand, mirror } => {
            if at > l.len() {
                return Err(mismatch("position out of range"));
            }
            let n = if at == l.len() { f.base } else { f.slice_counts()[at] };
            if strand == 0 || strand as usize > n {
                return Err(mismatch("no such strand"));
            }
            let m = strand;
            let new = if mirror {
                vec![Left(m + 1), Sigma(m), Right(m + 1)]
            } else {
                vec![Left(m), Sigma(m + 1), Right(m)]
            };
            Ok((at, 0, new))
        }
        Move::Lr2(i) => match get(i, 3)? {
            [Left(m), Sigma(b), Sigma(c)] if *b == m + 1 && c == m => Ok((i, 3, vec![Left(m + 1)])),
            [Left(m), Sigma(b), Sigma(c)] if *m == b + 1 && *c == *m => Ok((i, 3, vec![Left(*b)])),
            [Sigma(a), Sigma(b), Right(k)] if *b == a + 1 && k == a => Ok((i, 3, vec![Right(*b)])),
            [Sigma(a), Sigma(b), Right(k)] if *a == b + 1 && k == a => Ok((i, 3, vec![Right(*b)])),
            _ => Err(mismatch("no type II pattern")),
        },
        Move::Lr2Expand { at, below } => {
            let letter = *l.get(at).ok_or_else(|| mismatch("position out of range"))?;
            let n = f.slice_counts()[at];
            let new = match (letter, below) {
                (Left(k), false) if k >= 2 => vec![Left(k - 1), Sigma(k), Sigma(k - 1)],
                (Left(k), true) if (k as usize) <= n => vec![Left(k + 1), Sigma(k), Sigma(k + 1)],
                (Right(k), false) if k >= 2 => vec![Sigma(k - 1), Sigma(k), Right(k - 1)],
                (Right(k), true) if (k as usize) + 2 <= n => vec![Sigma(k + 1), Sigma(k), Right(k + 1)],
                _ => return Err(mismatch("no strand to push through the cusp")),
            };
            Ok((at, 1, new))
        }
    }
}

/// A parsed front file: the word plus optional orientation and potential
/// directives keyed by 1-based component number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontFile {
    pub word: FrontWord,
    pub orient: BTreeMap<usize, Dir>,
    pub maslov: BTreeMap<usize, i64>,
}

const MAX_INDEX: u64 = 100_000;

impl FrontFile {
    pub fn parse(text: &str) -> Result<Self, FrontError> {
        let mut base: Option<usize> = None;
        let mut letters = Vec::new();
        let mut orient = BTreeMap::new();
        let mut maslov = BTreeMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            let line_no = ln + 1;
            let syntax = |msg: String| FrontError::Syntax { line: line_no, msg };
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap();
            match head {
                "strands" => {
                    if base.is_some() || !letters.is_empty() {
                        return Err(syntax("strands header must come first and only once".into()));
                    }
                    let v = toks.next().ok_or_else(|| syntax("missing strand count".into()))?;
                    let n: u64 = v.parse().map_err(|_| syntax(format!("bad strand count {v:?}")))?;
                    if n > MAX_INDEX {
                        return Err(syntax("strand count too large".into()));
                    }
                    if toks.next().is_some() {
                        return Err(syntax("trailing tokens after strand count".into()));
                    }
                    base = Some(n as usize);
                }
                "orient" | "maslov" => {
                    let mut any = false;
                    for t in toks {
                        any = true;
                        let (c, v) = t.split_once('=').ok_or_else(|| syntax(format!("expected c<k>=<value>, got {t:?}")))?;
                        let k: usize = c
                            .strip_prefix('c')
                            .and_then(|k| k.parse().ok())
                            .filter(|&k: &usize| k >= 1 && k as u64 <= MAX_INDEX)
                            .ok_or_else(|| syntax(format!("bad component {c:?}")))?;
                        if head == "orient" {
                            let d = match v {
                                "+" => Dir::Right,
                                "-" => Dir::Left,
                                _ => return Err(syntax(format!("orientation must be + or -, got {v:?}"))),
                            };
                            if orient.insert(k, d).is_some() {
                                return Err(syntax(format!("duplicate orientation for c{k}")));
                            }
                        } else {
                            let x: i64 = v.parse().map_err(|_| syntax(format!("bad potential {v:?}")))?;
                            if x.unsigned_abs() > MAX_INDEX {
                                return Err(syntax("potential too large".into()));
                            }
                            if maslov.insert(k, x).is_some() {
                                return Err(syntax(format!("duplicate potential for c{k}")));
                            }
                        }
                    }
                    if !any {
                        return Err(syntax(format!("empty {head} directive")));
                    }
                }
                _ => {
                    for t in std::iter::once(head).chain(toks) {
                        letters.push(parse_letter(t).ok_or_else(|| syntax(format!("bad token {t:?}")))?);
                    }
                }
            }
        }
        let word = FrontWord::new(base.unwrap_or(0), letters)?;
        Ok(FrontFile { word, orient, maslov })
    }

    /// Orientation vector with `+` for unlisted components.
    pub fn orientation(&self) -> Result<Vec<Dir>, FrontError> {
        let k = self.word.components().len();
        if let Some((&c, _)) = self.orient.iter().find(|(&c, _)| c > k) {
            return Err(FrontError::UnknownComponent { component: c, what: "orientation target" });
        }
        Ok((1..=k).map(|c| self.orient.get(&c).copied().unwrap_or(Dir::Right)).collect())
    }

    pub fn oriented(&self) -> Result<OrientedFront, FrontError> {
        OrientedFront::new(self.word.clone(), &self.orientation()?)
    }
}

impl fmt::Display for FrontFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands {}", self.word.base)?;
        if !self.word.letters.is_empty() {
            let ls: Vec<String> = self.word.letters.iter().map(|l| l.to_string()).collect();
            writeln!(f, "{}", ls.join(" "))?;
        }
        if !self.orient.is_empty() {
            let os: Vec<String> = self
                .orient
                .iter()
                .map(|(c, d)| format!("c{c}={}", if *d == Dir::Right { '+' } else { '-' }))
                .collect();
            writeln!(f, "orient {}", os.join(" "))?;
        }
        if !self.maslov.is_empty() {
            let ms: Vec<String> = self.maslov.iter().map(|(c, v)| format!("c{c}={v}")).collect();
            writeln!(f, "maslov {}", ms.join(" "))?;
        }
        Ok(())
    }
}

fn parse_letter(t: &str) -> Option<Letter> {
    let mut chars = t.chars();
    let kind = chars.next()?;
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let m: u64 = rest.parse().ok()?;
    if m == 0 || m > MAX_INDEX {
        return None;
    }
    let m = m as u32;
    match kind {
        's' => Some(Letter::Sigma(m)),
        'l' => Some(Letter::Left(m)),
        'r' => Some(Letter::Right(m)),
        _ => None,
    }
}

/// Parses the text format and returns the validated word.
pub fn parse_front(text: &str) -> Result<FrontWord, FrontError> {
    FrontFile::parse(text).map(|f| f.word)
}
