#![allow(dead_code)]

use jetlink::front::{Dir, FrontWord, Letter, Move, OrientedFront};
use proptest::prelude::*;

/// Builds a valid word from arbitrary choices: each `(kind, idx)` picks a
/// letter valid at the current strand count, and right (or left) cusps close
/// the word back up to `base` strands.
pub fn word_from_choices(base: usize, choices: &[(u8, u32)], max_strands: usize) -> FrontWord {
    let mut n = base;
    let mut letters = Vec::new();
    for &(kind, idx) in choices {
        let l = match kind % 3 {
            0 if n >= 2 => Letter::Sigma(1 + idx % (n as u32 - 1)),
            1 if n + 2 <= max_strands => Letter::Left(1 + idx % (n as u32 + 1)),
            2 if n >= 2 => Letter::Right(1 + idx % (n as u32 - 1)),
            _ => continue,
        };
        n = l.apply_count(n).unwrap();
        letters.push(l);
    }
    while n > base {
        letters.push(Letter::Right(1));
        n -= 2;
    }
    while n < base {
        letters.push(Letter::Left(1));
        n += 2;
    }
    FrontWord::new(base, letters).unwrap()
}

pub fn orient(word: FrontWord, flips: &[bool]) -> OrientedFront {
    let k = word.components().len();
    let dirs: Vec<Dir> = (0..k)
        .map(|i| if flips.get(i).copied().unwrap_or(false) { Dir::Left } else { Dir::Right })
        .collect();
    OrientedFront::new(word, &dirs).unwrap()
}

pub fn arb_front(max_base: usize, max_letters: usize, max_strands: usize) -> impl Strategy<Value = OrientedFront> {
    (
        0..=max_base,
        prop::collection::vec((any::<u8>(), any::<u32>()), 0..=max_letters),
        prop::collection::vec(any::<bool>(), 8),
    )
        .prop_map(move |(base, choices, flips)| orient(word_from_choices(base, &choices, max_strands), &flips))
}

/// Every move that applies to `f`, insertions included.
pub fn candidate_moves(f: &OrientedFront, with_inserts: bool) -> Vec<Move> {
    f.available_moves(with_inserts)
}

/// Applies moves chosen by `picks`, keeping the word area at most `max_area`.
pub fn random_walk(f: &OrientedFront, picks: &[usize], max_area: usize) -> Vec<(Move, OrientedFront)> {
    let mut cur = f.clone();
    let mut out = Vec::new();
    for &p in picks {
        let moves = candidate_moves(&cur, cur.word().word_area() < max_area);
        let mv = moves[p % moves.len()];
        cur = cur.apply_move(mv).unwrap();
        out.push((mv, cur.clone()));
    }
    out
}

/// Plat closure of a braid on `2k` strands: `l1 l3 ... braid ... r3 r1`.
pub fn plat(k: u32, braid: &[u32]) -> FrontWord {
    let mut letters: Vec<Letter> = (0..k).map(|j| Letter::Left(2 * j + 1)).collect();
    let n = 2 * k;
    letters.extend(braid.iter().filter(|_| n >= 2).map(|&b| Letter::Sigma(1 + b % (n - 1))));
    letters.extend((0..k).rev().map(|j| Letter::Right(2 * j + 1)));
    FrontWord::new(0, letters).unwrap()
}

/// Fronts that usually carry 2-graded rulings: plat closures and stacks of
/// basic fronts, optionally stacked together and pushed through moves.
pub fn arb_ruled_front() -> impl Strategy<Value = OrientedFront> {
    let plats = (1u32..=2, prop::collection::vec(any::<u32>(), 0..6), prop::collection::vec(any::<bool>(), 4))
        .prop_map(|(k, braid, flips)| orient(plat(k, &braid), &flips));
    let basics = prop::collection::vec(prop::sample::select(vec![1, 2, 3, -1, -2, -3]), 1..4)
        .prop_map(|fs| jetlink::front::basic_product(&fs));
    (plats, basics, 0u8..3, prop::collection::vec(any::<usize>(), 0..6)).prop_map(|(p, b, how, picks)| {
        let f = match how {
            0 => p,
            1 => b,
            _ => jetlink::front::stack(&p, &b),
        };
        random_walk(&f, &picks, 22).pop().map(|(_, g)| g).unwrap_or(f)
    })
}
