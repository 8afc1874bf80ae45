use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use weilforge::algebra::{
    aux_prime_search, condition_star, conductor_index, eichler_condition, empirical_density,
    feasible_cyclic_degrees, galois_norm_obstruction, torsion_field_degree, two_sided_group,
    AuxChecks, AuxPrimeCriteria,
};
use weilforge::forge::{admissible_iv_polygon, forge, is_admissible, DivisionAlgebraSpec};
use weilforge::honda_tate::{classify, weil_from_coords, NewtonPolygon, WeilNumber};
use weilforge::quadfield::{
    class_group, class_number_by_generation, is_norm, principal_generator, splitting,
};
use weilforge::torsion_lab::{
    bezout_witness, check_decomposition, fixture_commuting_family, kernel, multiplication_matrix,
    KernelDescription, TorsionEndomorphism, TorsionModule,
};
use weilforge::{QuadInt, QuadraticField};

use crate::report::{big, quad, rational, Report};
use crate::{search_bound, AlgebraArgs, AuxArgs, CliError, Command, WeilArgs};

type Outcome = Result<Report, CliError>;

pub(crate) fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Classify(a) => cmd_classify(a),
        Command::Forge(a) => cmd_forge(a),
        Command::Degrees { disc, bound } => cmd_degrees(*disc, *bound),
        Command::Classgroup { disc } => cmd_classgroup(*disc),
        Command::Star { disc, d } => cmd_star(*disc, *d),
        Command::Twosided { disc, d } => cmd_twosided(*disc, *d),
        Command::Auxprime(a) => cmd_auxprime(a),
        Command::Density(a) => cmd_density(a),
        Command::Torsion { seed, l, exp, d, matrix } => match (seed, matrix) {
            (Some(seed), None) => cmd_torsion_seeded(*seed, l.unwrap(), exp.unwrap(), d.unwrap()),
            (None, Some(path)) => cmd_torsion_file(path),
            _ => Err(CliError::Usage("torsion needs either --seed (with --l --exp --d) or --matrix".into())),
        },
        Command::Norm { disc, l } => cmd_norm(*disc, *l),
        Command::Split { disc, p } => cmd_split(*disc, *p),
        Command::Generator { disc, p, n } => cmd_generator(*disc, *p, *n),
        Command::Obstruction { p, l } => cmd_obstruction(*p, *l),
        Command::Conductor(a) => cmd_conductor(a),
        Command::Polygon { d, j } => cmd_polygon(*d, *j),
        Command::Eichler(a) => cmd_eichler(a),
        Command::TorsionDegree { weil, ell_x, ell_y } => cmd_torsion_degree(weil, ell_x, ell_y),
        Command::Selftest { .. } => unreachable!("handled by the dispatcher"),
    }
}

fn field(disc: i64) -> Result<QuadraticField, CliError> {
    Ok(QuadraticField::new(disc)?)
}

fn weil_inputs(name: &'static str, a: &WeilArgs) -> Report {
    Report::new(name)
        .input("x", big(&a.x))
        .input("y", big(&a.y))
        .input("disc", a.disc)
        .input("p", a.p)
        .input("k", a.k)
}

fn weil(a: &WeilArgs) -> Result<WeilNumber, CliError> {
    Ok(weil_from_coords(a.disc, a.x.clone(), a.y.clone(), a.p, a.k)?)
}

fn polygon_text(poly: &NewtonPolygon) -> String {
    let parts: Vec<String> = poly
        .slopes()
        .iter()
        .map(|(s, m)| format!("{}/{}x{m}", s.numer(), s.denom()))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn polygon_json(poly: &NewtonPolygon) -> Value {
    json!({
        "text": polygon_text(poly),
        "slopes": poly
            .slopes()
            .iter()
            .map(|(s, m)| json!({ "slope": rational(s), "multiplicity": m }))
            .collect::<Vec<_>>(),
    })
}

fn weil_json(w: &WeilNumber) -> Value {
    let mut v = quad(w.pi());
    let obj = v.as_object_mut().expect("quad renders an object");
    obj.insert("p".into(), json!(w.p()));
    obj.insert("k".into(), json!(w.k()));
    obj.insert("q".into(), big(&w.q()));
    v
}

fn cmd_classify(a: &WeilArgs) -> Outcome {
    let mut r = weil_inputs("classify", a);
    let w = weil(a)?;
    let rep = classify(&w)?;
    r.set("weil", weil_json(&w));
    r.set("splitting", rep.splitting.to_string());
    r.set("dim", rep.dim);
    r.set("m_pi", rep.m_pi);
    r.set("newton_polygon", polygon_json(&rep.newton));
    let inv: Map<String, Value> = rep
        .invariants
        .entries
        .iter()
        .map(|(place, x)| (place.to_string(), rational(x)))
        .collect();
    r.set("hasse_invariants", inv);
    r.set("char_poly", rep.char_poly_coeffs.iter().map(big).collect::<Vec<_>>());
    r.set("point_count", big(&rep.point_count));
    r.set("p_rank", rep.p_rank);
    r.set("absolutely_simple", rep.absolutely_simple);
    let kind = match &rep.type_iv {
        Some(iv) => format!("IV(1,{})", iv.d),
        None if rep.p_rank == rep.dim => "ordinary".into(),
        None if rep.newton.slopes().len() == 1 => "supersingular".into(),
        None => "other".into(),
    };
    r.set("type", kind);
    r.set("type_iv_j", rep.type_iv.map(|iv| iv.j));
    r.set(
        "min_field_exponent",
        json!({ "exact": rep.min_field_exponent_exact, "class_number_bound": rep.min_field_exponent_bound }),
    );
    r.cite("dim = m_pi * [Q(pi):Q] / 2, invariants inv_v = [K_v:Q_p] v(pi)/v(q) mod 1", "Honda-Tate theory");
    r.cite("#A(F_q) = N(1 - pi)^m_pi", "characteristic polynomial of Frobenius");
    Ok(r)
}

fn cmd_forge(a: &AlgebraArgs) -> Outcome {
    let mut r = Report::new("forge")
        .input("disc", a.disc)
        .input("p", a.p)
        .input("d", a.d)
        .input("j", a.j);
    let spec = DivisionAlgebraSpec::new(field(a.disc)?, a.p, a.d, a.j)?;
    let f = forge(&spec)?;
    let (inv1, inv2) = spec.invariants();
    r.set("weil", weil_json(&f.weil));
    r.set("n", f.n);
    r.set("base_generator", quad(&f.base_generator));
    r.set("hasse_invariants", json!({ "p-adic-1": rational(&inv1), "p-adic-2": rational(&inv2) }));
    r.set(
        "classify_args",
        format!(
            "--x {} --y {} --disc {} --p {} --k {}",
            f.weil.pi().x(),
            f.weil.pi().y(),
            a.disc,
            a.p,
            f.weil.k()
        ),
    );
    r.cite("pi = g^j conj(g)^(d-j) with (g) = P^n, n the order of [P]", "Honda-Tate realization over a CM field");
    Ok(r)
}

fn cmd_degrees(disc: i64, bound: u64) -> Outcome {
    let mut r = Report::new("degrees").input("disc", disc).input("bound", bound);
    let degrees = feasible_cyclic_degrees(field(disc)?, bound)?;
    r.set("count", degrees.len());
    r.set("degrees", degrees);
    r.cite("l is a norm iff l splits into principal primes", "class field theory of the Hilbert class field");
    Ok(r)
}

fn cmd_classgroup(disc: i64) -> Outcome {
    let mut r = Report::new("classgroup").input("disc", disc);
    let k = field(disc)?;
    let g = class_group(k);
    r.set("h", g.h());
    r.set("h_by_generation", class_number_by_generation(k));
    r.set("invariant_factors", g.invariant_factors().to_vec());
    r.set("forms", g.forms().iter().map(|f| f.to_string()).collect::<Vec<_>>());
    r.cite("Cl(O_K) is the group of reduced primitive forms", "Gauss composition");
    Ok(r)
}

fn cmd_star(disc: i64, d: u64) -> Outcome {
    let mut r = Report::new("star").input("disc", disc).input("d", d);
    let s = condition_star(field(disc)?, d);
    r.set("d_prime_power", s.d_prime_power);
    r.set("center_outside_cyclotomic", s.center_outside_cyclotomic);
    r.set("class_number_coprime", s.class_number_coprime);
    r.set("satisfied", s.satisfied);
    r.cite("K lies in Q(zeta_d) iff disc(K) divides d", "conductor-discriminant formula");
    Ok(r)
}

fn cmd_twosided(disc: i64, d: u64) -> Outcome {
    let mut r = Report::new("twosided").input("disc", disc).input("d", d);
    let t = two_sided_group(field(disc)?, d);
    r.set("order", t.order);
    r.set("class_number_part", t.class_number_part);
    r.set("cokernel_part", vec![t.cokernel_part.0, t.cokernel_part.1]);
    r.cite("0 -> Cl(O_K) -> Idl(Lambda) -> (Z/d)^2 -> 0", "two-sided ideals of a maximal order");
    Ok(r)
}

fn aux_inputs(name: &'static str, a: &AuxArgs, bound: u64) -> Report {
    Report::new(name)
        .input("d", a.d)
        .input("p", a.p)
        .input("targets", a.targets.clone())
        .input("disc", a.disc)
        .input("bound", bound)
}

fn checks_json(c: &AuxChecks) -> Value {
    json!({
        "i_degree_one": c.i_degree_one,
        "ii_targets_split": c.ii_targets_split,
        "iii_inert_layers": c.iii_inert_layers,
        "iv_prime_to_disc": c.iv_prime_to_disc,
        "v_inert_in_k": c.v_inert_in_k,
    })
}

fn cmd_auxprime(a: &AuxArgs) -> Outcome {
    let bound = search_bound(a.bound)?;
    let mut r = aux_inputs("auxprime", a, bound);
    let crit = AuxPrimeCriteria::new(a.d, a.p, a.targets.clone(), a.disc)?;
    let hit = aux_prime_search(&crit, bound)?;
    r.set("p1", hit.p1);
    r.set("checks", checks_json(&hit.checks));
    r.set("predicted_density", rational(&crit.predicted_density()));
    r.cite("conditions are power-residue congruences modulo p1", "Chebotarev density theorem");
    Ok(r)
}

fn cmd_density(a: &AuxArgs) -> Outcome {
    let bound = search_bound(a.bound)?;
    let mut r = aux_inputs("density", a, bound);
    let crit = AuxPrimeCriteria::new(a.d, a.p, a.targets.clone(), a.disc)?;
    let rep = empirical_density(&crit, bound);
    r.set("primes_tested", rep.primes_tested);
    r.set("conditioned", rep.conditioned);
    r.set("qualifying", rep.qualifying);
    r.set("empirical", rational(&rep.empirical));
    r.set("overall", rational(&rep.overall));
    r.set("predicted", rational(&rep.predicted));
    r.set("ratio_to_prediction", format!("{:.6}", rep.ratio_to_prediction()));
    r.cite("density phi(d)^2 / (2 d^(r+2)), conditioned on p1 = 1 (mod d)", "Chebotarev density theorem");
    Ok(r)
}

fn kernel_json(k: &KernelDescription) -> Value {
    json!({
        "order": k.order.to_string(),
        "elementary_divisors": k.elementary_divisors,
        "cyclic": k.cyclic,
        "generators": k.generators,
    })
}

fn torsion_report(mut r: Report, family: &[TorsionEndomorphism]) -> Outcome {
    let module = family[0].module();
    r.set("module", json!({ "n": module.n(), "rank": module.rank() }));
    r.set("kernels", family.iter().map(|e| kernel_json(&kernel(e))).collect::<Vec<_>>());
    if family.len() >= 2 {
        let v = check_decomposition(family)?;
        let mut pairs = Vec::new();
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                let w = bezout_witness(&family[i], &family[j])?;
                pairs.push(json!({ "pair": [i, j], "bezout": w.is_some() }));
            }
        }
        r.set(
            "decomposition",
            json!({
                "pairwise_coprime": v.pairwise_coprime,
                "kernels_intersect_trivially": v.kernels_intersect_trivially,
                "product_kernel_order": v.product_kernel_order.to_string(),
                "product_of_kernel_orders": v.product_of_kernel_orders.to_string(),
                "sum_order": v.sum_order.to_string(),
                "holds": v.decomposition_holds,
                "bezout": pairs,
            }),
        );
    }
    r.cite("ker of A over Z/n is a sum of Z/gcd(d_i, n) for the Smith invariants d_i", "Smith normal form");
    r.cite("A1 M1 + A2 M2 = 1 forces ker M1 and ker M2 to meet trivially", "Bezout identity in a commutative ring");
    Ok(r)
}

fn cmd_torsion_seeded(seed: u64, l: u64, exp: u32, d: usize) -> Outcome {
    let r = Report::new("torsion")
        .input("seed", seed)
        .input("l", l)
        .input("exp", exp)
        .input("d", d);
    let family = fixture_commuting_family(l, exp, d, seed)?;
    torsion_report(r, &family)
}

/// Matrices as rows of integers, one entry per endomorphism.
type Blocks = Vec<Vec<Vec<i64>>>;

fn parse_matrix_file(text: &str) -> Result<(u64, usize, Blocks), CliError> {
    let bad = |m: &str| CliError::Usage(format!("matrix file: {m}"));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<u64> = lines
        .next()
        .ok_or_else(|| bad("missing header line"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("header must be \"n rank count\"")))
        .collect::<Result<_, _>>()?;
    let [n, rank, count] = header[..] else {
        return Err(bad("header must be \"n rank count\""));
    };
    if count == 0 || rank == 0 {
        return Err(bad("rank and count must be positive"));
    }
    let rank = rank as usize;
    let mut mats = Vec::new();
    for _ in 0..count {
        let mut m = Vec::with_capacity(rank);
        for _ in 0..rank {
            let row: Vec<i64> = lines
                .next()
                .ok_or_else(|| bad("fewer rows than the header announces"))?
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("entries must be integers")))
                .collect::<Result<_, _>>()?;
            if row.len() != rank {
                return Err(bad("row length differs from rank"));
            }
            m.push(row);
        }
        mats.push(m);
    }
    if lines.next().is_some() {
        return Err(bad("trailing rows after the last block"));
    }
    Ok((n, rank, mats))
}

fn cmd_torsion_file(path: &Path) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let (n, rank, mats) = parse_matrix_file(&text)?;
    let r = Report::new("torsion")
        .input("matrix_n", n)
        .input("matrix_rank", rank)
        .input("matrix_count", mats.len());
    let module = TorsionModule::new(n, rank)?;
    let family = mats
        .iter()
        .map(|m| TorsionEndomorphism::new(module, m))
        .collect::<Result<Vec<_>, _>>()?;
    torsion_report(r, &family)
}

fn cmd_norm(disc: i64, l: u64) -> Outcome {
    let mut r = Report::new("norm").input("disc", disc).input("l", l);
    let k = field(disc)?;
    let t = is_norm(k, l)?;
    r.set("is_norm", t.is_norm);
    r.set(
        "routes",
        json!({
            "principal_class": t.routes.principal_class,
            "principal_form": t.routes.principal_form,
            "brute_force": t.routes.brute_force,
        }),
    );
    match &t.witness {
        Some(w) => {
            let w: QuadInt = w.convert();
            r.set("witness", quad(&w));
            r.set("witness_norm", big(&w.norm()));
            // Multiplication by the witness on O_K / l.
            let m = multiplication_matrix(&w, TorsionModule::new(l, 2)?)?;
            r.set("witness_kernel", kernel_json(&kernel(&m)));
        }
        None => r.set("witness", Value::Null),
    }
    r.cite("split + principal, principal form represents l, explicit norm search", "three equivalent characterizations");
    Ok(r)
}

fn cmd_split(disc: i64, p: u64) -> Outcome {
    let mut r = Report::new("split").input("disc", disc).input("p", p);
    let s = splitting(field(disc)?, p)?;
    r.set("kind", s.kind.to_string());
    r.set("ideal_class_order", s.ideal_class_order);
    r.cite("splitting of p follows the Kronecker symbol (disc/p)", "quadratic reciprocity");
    Ok(r)
}

fn cmd_generator(disc: i64, p: u64, n: Option<u32>) -> Outcome {
    let k = field(disc)?;
    let s = splitting(k, p)?;
    let n = match (n, s.ideal_class_order) {
        (Some(n), _) => n,
        (None, Some(order)) => order as u32,
        (None, None) => return Err(CliError::domain("NotSplit", format!("{p} is {} in the field", s.kind))),
    };
    let mut r = Report::new("generator").input("disc", disc).input("p", p).input("n", n);
    let g = principal_generator(k, p, n)?;
    r.set("generator", quad(&g));
    r.set("norm", big(&g.norm()));
    r.cite("a generator is read off the reduction of the form of P^n", "form-ideal correspondence");
    Ok(r)
}

fn cmd_obstruction(p: u64, l: u64) -> Outcome {
    let mut r = Report::new("obstruction").input("p", p).input("l", l);
    r.set("obstructed", galois_norm_obstruction(p, l)?);
    r.set("l_mod_p", l % p.max(1));
    r.cite("l splits in the degree-p subfield of Q(zeta_l) only if l = 1 (mod p)", "Kronecker-Weber");
    Ok(r)
}

fn cmd_conductor(a: &WeilArgs) -> Outcome {
    let mut r = weil_inputs("conductor", a);
    let idx = conductor_index(&weil(a)?)?;
    r.set("index", big(&idx));
    r.cite("Z[pi, conj(pi)] = Z + Z pi has index |y| in O_K", "lattice index");
    Ok(r)
}

fn cmd_polygon(d: u64, j: u64) -> Outcome {
    let mut r = Report::new("polygon").input("d", d).input("j", j);
    let poly = admissible_iv_polygon(d, j)?;
    r.set("newton_polygon", polygon_json(&poly));
    r.set("admissible", is_admissible(&poly));
    r.cite("admissible: symmetric with integral breakpoints", "Manin symmetry");
    Ok(r)
}

fn cmd_eichler(a: &AlgebraArgs) -> Outcome {
    let mut r = Report::new("eichler")
        .input("disc", a.disc)
        .input("p", a.p)
        .input("d", a.d)
        .input("j", a.j);
    let spec = DivisionAlgebraSpec::new(field(a.disc)?, a.p, a.d, a.j)?;
    let v = eichler_condition(&spec);
    r.set("holds", v.holds);
    r.set("reason", v.reason);
    r.cite("only totally definite quaternion algebras fail the condition", "Eichler norm theorem");
    Ok(r)
}

fn cmd_torsion_degree(a: &WeilArgs, ell_x: &BigInt, ell_y: &BigInt) -> Outcome {
    let mut r = weil_inputs("torsion-degree", a)
        .input("ell_x", big(ell_x))
        .input("ell_y", big(ell_y));
    let w = weil(a)?;
    let ell = QuadInt::new(w.field(), ell_x.clone(), ell_y.clone())?;
    r.set("degree", torsion_field_degree(&w, &ell)?);
    r.set("ell", quad(&ell));
    r.cite("the ell-torsion field has degree ord(pi mod ell)", "Frobenius action on torsion");
    Ok(r)
}
