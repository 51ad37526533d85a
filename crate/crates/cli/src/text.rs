//! Plain-text rendering of a [`Report`].

use std::fmt::Write;

use crate::report::*;

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", join(v))
}

pub fn render(r: &Report) -> String {
    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(w, "hopfcalc {}", r.command);
    let i = &r.input;
    if let Some(a) = &i.exponents {
        let _ = writeln!(w, "exponents: {}", tuple(a));
    }
    if let Some(p) = &i.poly {
        let _ = writeln!(w, "polynomial: {p}");
    }
    if let Some(n) = i.n {
        let _ = writeln!(w, "n: {n}");
    }
    if let Some(m) = &r.milnor {
        let _ = writeln!(w, "\n[milnor]");
        let _ = writeln!(w, "  tau: {} ({})", m.tau, m.tau_source);
        if let Some(b) = &m.basis_bounds {
            let _ = writeln!(w, "  basis: 0 <= j_i <= {}", tuple(b));
        }
        if let (Some(wt), Some(d)) = (&m.weights, &m.degree) {
            let _ = writeln!(w, "  weights: {}, degree {d}", tuple(wt));
        }
        if let Some(f) = &m.fixed_subspace_dim {
            let _ = writeln!(w, "  scaling-fixed subspace: {f}");
        }
        if let Some(e) = &m.enumerated_tau {
            let _ = writeln!(w, "  enumerated basis size: {e}");
        }
    }
    if let Some(l) = &r.link {
        let _ = writeln!(w, "\n[link]");
        let _ = writeln!(w, "  dimension: {}", l.link_dimension);
        let _ = writeln!(w, "  Delta(t) = {}", l.divisor_text);
        let _ = writeln!(w, "  degree: {}", l.degree);
        let _ = writeln!(w, "  eigenvalue-1 multiplicity: {}", l.eig1_multiplicity);
        let _ = writeln!(w, "  middle Betti: {}", l.middle_betti);
        match (&l.delta_at_one, &l.delta_at_one_factors) {
            (Some(v), _) => {
                let _ = writeln!(w, "  Delta(1) = {v}");
            }
            (None, Some(f)) => {
                let parts: Vec<String> = f.iter().map(|[b, e]| format!("{b}^{e}")).collect();
                let _ = writeln!(w, "  Delta(1) = {}", parts.join("*"));
            }
            (None, None) => {
                let _ = writeln!(w, "  Delta(1) = 0");
            }
        }
        let _ = writeln!(w, "  Q-homology sphere: {}", l.q_sphere);
        let _ = writeln!(w, "  Z-homology sphere: {}", l.z_sphere);
        if l.sphere_caveat != "none" {
            let _ = writeln!(w, "  caveat: {}", l.sphere_caveat);
        }
        if let Some(o) = &l.oracle {
            let _ = writeln!(
                w,
                "  oracle: {} tuples, multiplicity {}, Delta(1) ~ {}, agrees: {}",
                o.tuples,
                o.multiplicity,
                o.delta_at_one_estimate.as_deref().unwrap_or("-"),
                o.agrees
            );
        }
    }
    if let Some(q) = &r.quotient {
        let _ = writeln!(w, "\n[quotient]");
        let _ = writeln!(w, "  action: {}", q.action_provenance);
        let _ = writeln!(w, "  Betti: {}", tuple(&q.betti));
        let _ = writeln!(w, "  homological Hopf: {}", q.is_homological_hopf);
    }
    if let Some(l) = &r.local_system {
        let _ = writeln!(w, "\n[local-system]");
        let _ = writeln!(w, "  rank: {}", l.rank);
        let _ = writeln!(w, "  dims: {}", tuple(&l.dims));
    }
    if let Some(c) = &r.cohomology {
        let _ = writeln!(w, "\n[cohomology] n = {}", c.n);
        for t in &c.tables {
            let _ = writeln!(w, "  p = {}", t.p);
            if let Some(cover) = &t.cover {
                let _ = writeln!(w, "    cover:             {}", tuple(cover));
            }
            let _ = writeln!(w, "    hopf:              {}", tuple(&t.hopf));
            for (name, row) in [("bvdv (theorem):   ", &t.bvdv_theorem), ("bvdv (derivation):", &t.bvdv_derivation)] {
                if let Some(b) = row {
                    let _ = write!(w, "    {name} {}  W center {}", tuple(&b.row), b.w_center);
                    if b.clipped_mass > 0 {
                        let _ = write!(w, ", {} clipped", b.clipped_mass);
                    }
                    let _ = writeln!(w);
                }
            }
        }
    }
    if let Some(c) = &r.canonical {
        let _ = writeln!(w, "\n[canonical]");
        let _ = writeln!(w, "  K (Hopf): {}", tuple(&c.hopf));
        if let Some(b) = &c.bvdv {
            let _ = writeln!(w, "  K (Brieskorn-van de Ven): {}", tuple(b));
        }
        if let Some(b) = &c.bvdv_alternative {
            let _ = writeln!(w, "  K (alternative reading): {}", tuple(b));
        }
        let _ = writeln!(w, "  Picard group: {}", c.picard);
    }
    if let Some(a) = &r.autos {
        let _ = writeln!(w, "\n[autos]");
        let _ = writeln!(w, "  sum 1/a_i = {} (k = {})", a.sum_inverse_exponents, a.k);
        let _ = writeln!(w, "  finite automorphism group: {}", a.finite_automorphism_group);
    }
    if let Some(q) = &r.quadric {
        let _ = writeln!(w, "\n[quadric] n = {}, alpha = {}, beta = {}, f = {}", q.n, q.alpha, q.beta, tuple(&q.f));
        for v in &q.variants {
            let _ = writeln!(w, "  {} variant", v.variant);
            for c in &v.map {
                let _ = writeln!(w, "    {c}");
            }
            if v.preserves_quadric {
                let _ = writeln!(w, "    Q o T = {} * Q", v.multiplier);
            } else {
                let _ = writeln!(w, "    Q o T - {} * Q = {}", v.multiplier, v.residual.as_deref().unwrap_or("?"));
            }
            let _ = writeln!(w, "    {}: {}", v.spectrum_kind, tuple(&v.spectrum));
            let _ = writeln!(w, "    contracts: {}", v.contracts);
            if let Some(p) = &v.probe {
                let _ = writeln!(w, "    probe ({}), {} iterations:", p.label, p.iterations);
                for s in &p.samples {
                    let steps = s.steps_to_epsilon.map_or("-".to_string(), |k| k.to_string());
                    let _ = writeln!(w, "      {}, steps to epsilon: {steps}", s.verdict);
                }
            }
        }
    }
    if let Some(h) = &r.hodge {
        let _ = writeln!(w, "\n[hodge]");
        let _ = writeln!(w, "  target: {}", tuple(&h.target));
        let _ = writeln!(w, "  feasible: {}", h.feasible);
        if let Some(ranks) = &h.ranks {
            for (p, row) in ranks.iter().enumerate() {
                let _ = writeln!(w, "  rank d1 at p = {p}: {}", tuple(row));
            }
        }
        if h.feasible {
            let _ = writeln!(w, "  verified: {}", h.verified);
        }
    }
    s.trim_end().to_string()
}
