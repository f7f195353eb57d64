use std::collections::BTreeMap;

use jetlink::polyring::{LaurentPoly, TruncSeries};
use jetlink::symfun::*;
use proptest::prelude::*;

fn z() -> LaurentPoly {
    LaurentPoly::s(1) - LaurentPoly::s(-1)
}

#[test]
fn turaev_inner_is_symmetric() {
    for n in 0..=6 {
        let ps = partitions_of(n);
        for l in &ps {
            for m in &ps {
                assert_eq!(turaev_inner(l, m), turaev_inner(m, l), "{l} vs {m}");
            }
        }
    }
}

#[test]
fn schur_side_matches_contingency_sum() {
    for n in 1..=6 {
        let ps = partitions_of(n);
        let schur: Vec<SchurVector> = ps.iter().map(a_to_schur).collect();
        for (i, l) in ps.iter().enumerate() {
            for (j, m) in ps.iter().enumerate() {
                let lhs = schur_inner(&schur[i], &schur[j]);
                let rhs = turaev_inner(l, m).subst_z().unwrap();
                assert_eq!(lhs, rhs, "({l}, {m})");
            }
        }
    }
}

fn a_expansion_or_unit(i: u32) -> SchurVector {
    if i == 0 {
        SchurVector::unit()
    } else {
        hook_expand_a(i)
    }
}

#[test]
fn coproduct_of_basic_elements() {
    for m in 1..=8u32 {
        let lhs = schur_coproduct(&hook_expand_a(m));
        let mut rhs = SchurTensor::new();
        for i in 0..=m {
            // the i = 0 and i = m terms carry z * z^-1 = 1
            let c = if i == 0 || i == m { LaurentPoly::one() } else { z() };
            for (k, v) in tensor_of(&a_expansion_or_unit(i), &a_expansion_or_unit(m - i)) {
                tensor_add(&mut rhs, k, &(&v * &c));
            }
        }
        assert_eq!(lhs, rhs, "m = {m}");
    }
}

#[test]
fn bracket_generating_function() {
    let n = 10;
    let z2 = LaurentPoly::z(2);
    let brackets: Vec<LaurentPoly> = (0..=n as u32).map(|m| &bracket(m) * &z2).collect();
    let mut denom = vec![LaurentPoly::one()];
    for m in 1..=n {
        denom.push(z2.scale(-(m as i64)));
    }
    let inv = TruncSeries::new(n, denom).inverse().unwrap();
    assert_eq!(inv, TruncSeries::new(n, brackets));
}

fn hook_or_zero(a: i64, b: i64) -> Option<Partition> {
    (a >= 0 && b >= 0).then(|| Partition::hook(a as u32, b as u32))
}

#[test]
fn hook_coproduct_closed_form() {
    for m in 1..=7i64 {
        for b in 0..m {
            let a = m - 1 - b;
            let lambda = Partition::hook(a as u32, b as u32);
            let got = schur_coproduct(&SchurVector::basis(lambda.clone(), LaurentPoly::one()));
            let mut want = SchurTensor::new();
            let one = LaurentPoly::one();
            tensor_add(&mut want, (Partition::empty(), lambda.clone()), &one);
            tensor_add(&mut want, (lambda.clone(), Partition::empty()), &one);
            for k in 0..=m - 2 {
                for a1 in 0..=k {
                    let b1 = k - a1;
                    let left = Partition::hook(a1 as u32, b1 as u32);
                    for right in [hook_or_zero(a - a1 - 1, b - b1), hook_or_zero(a - a1, b - b1 - 1)]
                        .into_iter()
                        .flatten()
                    {
                        tensor_add(&mut want, (left.clone(), right), &one);
                    }
                }
            }
            assert_eq!(got, want, "hook ({a}|{b})");
        }
    }
}

// Independent LR oracle: multiply Schur polynomials in n variables built from
// semistandard tableaux, then peel off leading monomials.

type Poly = BTreeMap<Vec<u8>, i64>;

fn ssyt_polys(lambda: &Partition, nvars: u8) -> Poly {
    let cells: Vec<(usize, usize)> = (0..lambda.len())
        .flat_map(|r| (0..lambda.part(r) as usize).map(move |c| (r, c)))
        .collect();
    let mut out = Poly::new();
    let mut fill = vec![vec![0u8; lambda.part(0) as usize]; lambda.len()];
    fn go(idx: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<u8>>, nvars: u8, out: &mut Poly) {
        if idx == cells.len() {
            let mut e = vec![0u8; nvars as usize];
            for row in fill.iter() {
                for &v in row {
                    if v > 0 {
                        e[v as usize - 1] += 1;
                    }
                }
            }
            *out.entry(e).or_default() += 1;
            return;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { fill[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { fill[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=nvars {
            fill[r][c] = v;
            go(idx + 1, cells, fill, nvars, out);
        }
        fill[r][c] = 0;
    }
    if lambda.is_empty() {
        out.insert(vec![0; nvars as usize], 1);
        return out;
    }
    go(0, &cells, &mut fill, nvars, &mut out);
    out
}

fn poly_mul(x: &Poly, y: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in x {
        for (e2, c2) in y {
            let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            *out.entry(e).or_default() += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn decompose(mut p: Poly, nvars: u8) -> BTreeMap<Partition, i64> {
    let mut out = BTreeMap::new();
    while let Some((lead, &c)) = p.iter().next_back() {
        let lambda = Partition::new(lead.iter().map(|&x| x as u32).filter(|&x| x > 0).collect()).unwrap();
        for (e, d) in ssyt_polys(&lambda, nvars) {
            let v = p.entry(e).or_default();
            *v -= c * d;
        }
        p.retain(|_, c| *c != 0);
        out.insert(lambda, c);
    }
    out
}

#[test]
fn lr_matches_polynomial_products() {
    for total in 0..=6u32 {
        let nvars = total.max(1) as u8;
        for k in 0..=total {
            for mu in partitions_of(k) {
                for nu in partitions_of(total - k) {
                    let prod = decompose(poly_mul(&ssyt_polys(&mu, nvars), &ssyt_polys(&nu, nvars)), nvars);
                    for lambda in partitions_of(total) {
                        let want = prod.get(&lambda).copied().unwrap_or(0);
                        assert_eq!(lr_coefficient(&lambda, &mu, &nu) as i64, want, "c^{lambda}_({mu}),({nu})");
                    }
                }
            }
        }
    }
}

fn small_vector(max_weight: u32) -> impl Strategy<Value = SchurVector> {
    let parts: Vec<Partition> = (0..=max_weight).flat_map(partitions_of).collect();
    prop::collection::vec((prop::sample::select(parts), -2i64..=2, -2i32..=2), 1..4).prop_map(|ts| {
        let mut v = SchurVector::zero();
        for (p, c, e) in ts {
            v.add_term(p, &LaurentPoly::s(e).scale(c));
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_multiplicative(f in small_vector(2), g in small_vector(3)) {
        let lhs = schur_coproduct(&schur_mul(&f, &g));
        let rhs = tensor_mul(&schur_coproduct(&f), &schur_coproduct(&g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_adjoint_to_product(f in small_vector(5), g in small_vector(2), h in small_vector(3)) {
        let lhs = schur_inner(&f, &schur_mul(&g, &h));
        let rhs = tensor_inner(&schur_coproduct(&f), &tensor_of(&g, &h));
        prop_assert_eq!(lhs, rhs);
    }
}
