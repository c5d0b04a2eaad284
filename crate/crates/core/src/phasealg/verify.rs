use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::bracket::{is_dynamical_integral, is_true_integral, poisson_bracket, total_time_derivative};
use super::catalog::{hidden_integral, IntegralCatalog};
use super::poly::{Params, PhasePoly};
use crate::coupling::{Coupling, HiddenKind};
use crate::report::{Check, Report};
use crate::scalar::{Gq, Q};

/// Exact comparison of two polynomials; the residual is the largest coefficient of the difference.
pub fn compare(name: &str, lhs: &PhasePoly, rhs: &PhasePoly) -> Check {
    let d = lhs - rhs;
    Check::exact(name, lhs.to_string_short(), rhs.to_string_short(), d.max_abs_coeff())
}

fn i_times(k: i128, p: &PhasePoly) -> PhasePoly {
    p.scale_gq(Gq::new(Q::from_integer(0), Q::from_integer(k)))
}

/// Every nonzero bracket of the quadratic sp(4,R) generators.
pub fn sp4_table(cat: &IntegralCatalog) -> Vec<(String, PhasePoly, PhasePoly)> {
    let c = cat;
    let jp_l = &c.j0 + &c.l2;
    let jm_l = &c.j0 - &c.l2;
    let mut t: Vec<(String, PhasePoly, PhasePoly)> = Vec::new();
    let mut add = |name: &str, a: &PhasePoly, b: &PhasePoly, rhs: PhasePoly| {
        t.push((String::from(name), poisson_bracket(a, b), rhs));
    };
    add("{J0,J+}=-iJ+", &c.j0, &c.j_plus, i_times(-1, &c.j_plus));
    add("{J0,J-}=iJ-", &c.j0, &c.j_minus, i_times(1, &c.j_minus));
    add("{J-,J+}=-2iJ0", &c.j_minus, &c.j_plus, i_times(-2, &c.j0));
    add("{L2,L+}=-iL+", &c.l2, &c.l_plus, i_times(-1, &c.l_plus));
    add("{L2,L-}=iL-", &c.l2, &c.l_minus, i_times(1, &c.l_minus));
    add("{L+,L-}=-2iL2", &c.l_plus, &c.l_minus, i_times(-2, &c.l2));
    add("{J+,L-}=iB2+", &c.j_plus, &c.l_minus, i_times(1, &c.b2_plus));
    add("{J-,L+}=-iB2-", &c.j_minus, &c.l_plus, i_times(-1, &c.b2_minus));
    add("{J+,L+}=iB1+", &c.j_plus, &c.l_plus, i_times(1, &c.b1_plus));
    add("{J-,L-}=-iB1-", &c.j_minus, &c.l_minus, i_times(-1, &c.b1_minus));
    add("{J0,B1+}=-iB1+", &c.j0, &c.b1_plus, i_times(-1, &c.b1_plus));
    add("{J0,B1-}=iB1-", &c.j0, &c.b1_minus, i_times(1, &c.b1_minus));
    add("{J0,B2+}=-iB2+", &c.j0, &c.b2_plus, i_times(-1, &c.b2_plus));
    add("{J0,B2-}=iB2-", &c.j0, &c.b2_minus, i_times(1, &c.b2_minus));
    add("{J-,B2+}=-2iL-", &c.j_minus, &c.b2_plus, i_times(-2, &c.l_minus));
    add("{J+,B2-}=2iL+", &c.j_plus, &c.b2_minus, i_times(2, &c.l_plus));
    add("{J-,B1+}=-2iL+", &c.j_minus, &c.b1_plus, i_times(-2, &c.l_plus));
    add("{J+,B1-}=2iL-", &c.j_plus, &c.b1_minus, i_times(2, &c.l_minus));
    add("{L2,B1+}=-iB1+", &c.l2, &c.b1_plus, i_times(-1, &c.b1_plus));
    add("{L2,B1-}=iB1-", &c.l2, &c.b1_minus, i_times(1, &c.b1_minus));
    add("{L2,B2+}=iB2+", &c.l2, &c.b2_plus, i_times(1, &c.b2_plus));
    add("{L2,B2-}=-iB2-", &c.l2, &c.b2_minus, i_times(-1, &c.b2_minus));
    add("{L+,B1-}=2iJ-", &c.l_plus, &c.b1_minus, i_times(2, &c.j_minus));
    add("{L-,B1+}=-2iJ+", &c.l_minus, &c.b1_plus, i_times(-2, &c.j_plus));
    add("{L+,B2+}=-2iJ+", &c.l_plus, &c.b2_plus, i_times(-2, &c.j_plus));
    add("{L-,B2-}=2iJ-", &c.l_minus, &c.b2_minus, i_times(2, &c.j_minus));
    add("{B1-,B1+}=-4i(J0+L2)", &c.b1_minus, &c.b1_plus, i_times(-4, &jp_l));
    add("{B2-,B2+}=-4i(J0-L2)", &c.b2_minus, &c.b2_plus, i_times(-4, &jm_l));
    t
}

/// Evaluate the sp(4,R) bracket table, and confirm every unlisted pair brackets to zero.
pub fn verify_sp4_table(c: &Coupling) -> Report {
    verify_sp4_table_with(c, Params::default())
}

pub fn verify_sp4_table_with(c: &Coupling, params: Params) -> Report {
    let cat = IntegralCatalog::new(c, params);
    let mut rep = Report::new(format!("sp4 table at g={}", c.g()));
    let table = sp4_table(&cat);
    for (name, lhs, rhs) in &table {
        rep.push(compare(name, lhs, rhs).with_anchor("sp4-table"));
    }
    // Pairs not in the table (in either order) must commute.
    let gens = cat.quadratic();
    let listed = |a: &str, b: &str| {
        table.iter().any(|(n, _, _)| n.starts_with(&format!("{{{},{}}}", a, b)) || n.starts_with(&format!("{{{},{}}}", b, a)))
    };
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let (na, a) = gens[i];
            let (nb, b) = gens[j];
            if listed(na, nb) {
                continue;
            }
            let br = poisson_bracket(a, b);
            let zero = PhasePoly::zero(br.basis(), br.params());
            rep.push(compare(&format!("{{{},{}}}=0", na, nb), &br, &zero).with_anchor("sp4-table"));
        }
    }
    rep
}

/// Casimir relations of the four distinguished subalgebras.
pub fn verify_casimirs() -> Report {
    verify_casimirs_with(&Coupling::zero(), Params::default())
}

pub fn verify_casimirs_with(c: &Coupling, params: Params) -> Report {
    let k = IntegralCatalog::new(c, params);
    let mut rep = Report::new("casimirs");
    let zero = PhasePoly::zero(k.j0.basis(), params);
    let quarter = Q::new(1, 4);
    let half = Q::new(1, 2);
    // Casimirs are built from values at a common time; products of conjugate pairs are time independent.
    let s1 = &k.l2.pow(2) + &(&k.l_plus * &k.l_minus);
    rep.push(compare("S1: L2^2+L+L-=J0^2", &s1, &k.j0.pow(2)).with_anchor("casimir-s1"));
    let s2 = &(-&k.j0.pow(2)) + &(&k.j_plus * &k.j_minus);
    rep.push(compare("S2: -J0^2+J+J-=-L2^2", &s2, &(-&k.l2.pow(2))).with_anchor("casimir-s2"));
    let a3 = (&k.j0 - &k.l2).scale_q(half);
    let s3 = &(-&a3.pow(2)) + &(&k.b2_plus * &k.b2_minus).scale_q(quarter);
    rep.push(compare("S3: -((J0-L2)/2)^2+B2+B2-/4=0", &s3, &zero).with_anchor("casimir-s3"));
    let a4 = (&k.j0 + &k.l2).scale_q(half);
    let s4 = &(-&a4.pow(2)) + &(&k.b1_plus * &k.b1_minus).scale_q(quarter);
    rep.push(compare("S4: -((J0+L2)/2)^2+B1+B1-/4=0", &s4, &zero).with_anchor("casimir-s4"));
    rep
}

/// Every catalog generator is conserved along `H_g` once its time factor is included.
pub fn verify_catalog_conservation(c: &Coupling, params: Params) -> Report {
    let k = IntegralCatalog::new(c, params);
    let h = k.hamiltonian();
    let mut rep = Report::new(format!("catalog conservation at g={}", c.g()));
    for (name, p) in k.quadratic().into_iter().chain(k.linear()) {
        match total_time_derivative(p, &h) {
            Ok(d) => {
                let zero = PhasePoly::zero(d.basis(), params);
                rep.push(compare(&format!("d{}/dt=0", name), &d, &zero).with_anchor("dynamical-integrals"));
            }
            Err(e) => rep.push(Check::new(format!("d{}/dt=0", name), format!("{}", e), "0", f64::INFINITY, false)),
        }
    }
    rep
}

/// The hidden integrals are raised and lowered by the quadratic generators.
pub fn verify_hidden_ladders(c: &Coupling, params: Params) -> Report {
    let k = IntegralCatalog::new(c, params);
    let hx = c.hidden();
    let (s1, s2) = (hx.s1, hx.s2);
    let mut rep = Report::new(format!("hidden ladders at g={}", c.g()));
    let hi = |kind, a: u32, b: u32, conj| hidden_integral(c, params, kind, a, b, conj).ok();
    let half_i = |k: i128, p: &PhasePoly| p.scale_gq(Gq::new(Q::from_integer(0), Q::new(k, 2)));
    let kind = hx.kind;
    let Some(plus) = hi(kind, s1, s2, false) else {
        return rep;
    };
    let (s1i, s2i) = (s1 as i128, s2 as i128);
    let (l2_w, j0_w) = match kind {
        HiddenKind::L => (-(s1i + s2i), -(s1i - s2i)),
        HiddenKind::J => (-(s1i - s2i), -(s1i + s2i)),
    };
    rep.push(compare("{L2,X+}", &poisson_bracket(&k.l2, &plus), &half_i(l2_w, &plus)).with_anchor("hidden-weights"));
    rep.push(compare("{J0,X+}", &poisson_bracket(&k.j0, &plus), &half_i(j0_w, &plus)).with_anchor("hidden-weights"));
    let (up, down) = match kind {
        HiddenKind::L => (&k.j_plus, &k.j_minus),
        HiddenKind::J => (&k.l_plus, &k.l_minus),
    };
    // up-generator moves one unit from mode 2 to mode 1, the down-generator the other way
    if s2 > 0 {
        let target = hi(kind, s1 + 1, s2 - 1, false).unwrap();
        let sign = if kind == HiddenKind::L { 1 } else { -1 };
        rep.push(compare("{up,X+}=+-i s2 X+(s1+1,s2-1)", &poisson_bracket(up, &plus), &i_times(sign * s2i, &target)).with_anchor("hidden-ladder"));
    }
    if s1 > 0 {
        let target = hi(kind, s1 - 1, s2 + 1, false).unwrap();
        rep.push(compare("{down,X+}=-i s1 X+(s1-1,s2+1)", &poisson_bracket(down, &plus), &i_times(-s1i, &target)).with_anchor("hidden-ladder"));
    }
    rep
}

/// Twenty rational couplings spread over all phases, both signs and both sides of `|g| = 1`.
pub fn condition_sweep() -> Vec<Coupling> {
    [(0, 1), (1, 3), (-1, 3), (1, 2), (-1, 2), (2, 3), (3, 5), (-3, 5), (1, 7), (4, 5), (1, 1), (-1, 1), (3, 2), (-3, 2), (2, 1), (3, 1), (-3, 1), (5, 3), (7, 2), (-5, 4)]
        .into_iter()
        .map(|(a, b)| Coupling::new(Q::new(a, b)))
        .collect()
}

/// For each coupling, every bare monomial `(b1+)^s1 (b2-+)^s2` with `s1, s2 <= smax` is a true
/// integral exactly when `s1 l1 = s2 l2` (kind L) or `s1 l1 + s2 l2 = 0` (kind J), and carrying its
/// time factor it is always conserved.
pub fn verify_integral_conditions(couplings: &[Coupling], params: Params, smax: u32) -> Report {
    let mut rep = Report::new(format!("true-integral conditions, s1,s2<={}", smax));
    for c in couplings {
        let h = IntegralCatalog::new(c, params).hamiltonian();
        let (l1, l2) = c.ells();
        let mut mismatched = 0usize;
        let mut not_conserved = 0usize;
        let mut found = 0usize;
        for kind in [HiddenKind::L, HiddenKind::J] {
            for s1 in 0..=smax {
                for s2 in 0..=smax {
                    if s1 == 0 && s2 == 0 {
                        continue;
                    }
                    let (a, b) = (Q::from_integer(s1 as i128), Q::from_integer(s2 as i128));
                    let cond = match kind {
                        HiddenKind::L => a * l1 == b * l2,
                        HiddenKind::J => a * l1 + b * l2 == Q::from_integer(0),
                    };
                    for conj in [false, true] {
                        let Ok(full) = hidden_integral(c, params, kind, s1, s2, conj) else {
                            mismatched += 1;
                            continue;
                        };
                        let truth = is_true_integral(&full.at_time_zero(), &h).unwrap_or(!cond);
                        if truth != cond {
                            mismatched += 1;
                        }
                        if truth {
                            found += 1;
                        }
                        if !is_dynamical_integral(&full, &h).unwrap_or(false) {
                            not_conserved += 1;
                        }
                    }
                }
            }
        }
        rep.push(
            Check::exact(format!("true integral <=> weight condition at g={} ({} true)", c.g(), found), format!("{} mismatches", mismatched), "0", mismatched as f64)
                .with_anchor("true-integral-condition"),
        );
        rep.push(
            Check::exact(format!("time-dressed monomials conserved at g={}", c.g()), format!("{} not conserved", not_conserved), "0", not_conserved as f64)
                .with_anchor("dynamical-integrals"),
        );
    }
    rep
}
