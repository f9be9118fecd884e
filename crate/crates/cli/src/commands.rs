use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use sasaki_join::admissible::{
    ke_defect, ke_profile, lemma_integrals, quasiregular_family, ratios, soliton_function,
    solve_extremal, solve_ke_ray, solve_soliton, t_from_k_linear, ypq_bridge, ypq_from_ab,
    AdmissibleData, KeSolution, RayClass,
};
use sasaki_join::exact::to_f64;
use sasaki_join::join::{enumerate_regular_cones, has_regular_ray, make_join};
use sasaki_join::quotient::{orbit_periods, reeb_quotient, ypq_quotient};
use sasaki_join::topology::{
    cohomology_delpezzo_join, cohomology_quadric_join, cohomology_sphere_join,
    homeo_obstruction, homotopy_equivalent_7, p1_residue, partition_classes,
    quadric_join_indices, sphere_join_l1,
};
use sasaki_join::{Error, FanoBase, JoinSpec, ReebRay, Regularity, WeightVector};

use crate::render::{self, big, pair_v, pair_w, rational};
use crate::{
    BaseArgs, CohomologyFamily, Command, CommandResult, Context, Failure, RationalityFilter,
    RegularityFilter,
};

const JOIN_INDICES: &str = "relative Fano indices l1 = I_N/gcd(|w|,I_N), l2 = |w|/gcd(|w|,I_N)";
const SMOOTHNESS: &str = "join is smooth iff gcd(l2, l1*w1*w2) = 1";
const QUOTIENT: &str =
    "quotient by xi_v: s = gcd(l2, w1*v2 - w2*v1), m_i = v_i*m, degree n = l1*(w1*v2 - w2*v1)/s, branch divisor (1-1/m1)D1 + (1-1/m2)D2";
const ADMISSIBLE: &str = "admissible data r = (c-t)/(c+t) with t = w2/w1, c = v2/v1, s = I_N/n";
const KE_INTEGRAL: &str =
    "Einstein defect f(c) = integral over [-1,1] of ((1-c)-(1+c)z)((c+t)+(c-t)z)^d_N";
const STURM: &str = "roots isolated by Sturm sequences with exact rational arithmetic";

fn resolve_base(args: &BaseArgs) -> Result<FanoBase, Failure> {
    match (&args.base, args.dn, args.index) {
        (Some(b), dn, index) => {
            if dn.is_some_and(|d| d != b.d_n) || index.is_some_and(|i| i != b.fano_index) {
                return Err(Failure::Usage(format!(
                    "--dn/--index disagree with --base {} (d_N = {}, I_N = {})",
                    b.spec_string(),
                    b.d_n,
                    b.fano_index
                )));
            }
            Ok(b.clone())
        }
        (None, Some(dn), Some(index)) => Ok(FanoBase::custom(index, dn)?),
        (None, Some(dn), None) => Ok(FanoBase::projective_space(dn)?),
        (None, None, _) => Err(Failure::Usage("give --base or --dn".into())),
    }
}

fn result(command: &str, inputs: Value, outputs: Value, provenance: &[&str]) -> CommandResult {
    CommandResult {
        command: command.into(),
        inputs,
        outputs,
        provenance: provenance.iter().map(|p| p.to_string()).collect(),
    }
}

fn join_inputs(join: &JoinSpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("base".into(), json!(join.base.spec_string()));
    m.insert("w".into(), pair_w(join.w));
    m
}

pub fn dispatch(cmd: &Command, ctx: &Context) -> Result<CommandResult, Failure> {
    match cmd {
        Command::Join { base, w } => {
            let join = make_join(base, *w)?;
            let diagonal = ReebRay::new(1, 1)?;
            let regular = if w.is_homogeneous() {
                Value::Null
            } else {
                json!(has_regular_ray(&join, diagonal)?)
            };
            let mut out = render::join(&join);
            out["regular_ray_at_diagonal"] = regular;
            Ok(result(
                "join",
                Value::Object(join_inputs(&join)),
                out,
                &[JOIN_INDICES, SMOOTHNESS, "regular Reeb field only at v = (1,1), when l2 divides w1 - w2"],
            ))
        }
        Command::RegularCones { base } => {
            let cones = enumerate_regular_cones(base);
            Ok(result(
                "regular-cones",
                json!({"base": base.spec_string()}),
                json!({
                    "base": render::base(base),
                    "count": cones.len(),
                    "cones": cones.iter().map(|w| pair_w(*w)).collect::<Vec<_>>(),
                }),
                &[JOIN_INDICES, "regular cones: w = (K+j, K-j)/gcd for K | I_N, 1 <= j < K, with gcd(I_N, |w|) = K"],
            ))
        }
        Command::Quotient { base, w, v } => {
            let join = make_join(&resolve_base(base)?, *w)?;
            let q = reeb_quotient(&join, *v)?;
            let mut inputs = join_inputs(&join);
            inputs.insert("v".into(), pair_v(*v));
            Ok(result(
                "quotient",
                Value::Object(inputs),
                json!({"join": render::join(&join), "v": pair_v(*v), "quotient": render::quotient(&q)}),
                &[JOIN_INDICES, QUOTIENT],
            ))
        }
        Command::Periods { base, w, v } => {
            let join = make_join(&resolve_base(base)?, *w)?;
            let p = orbit_periods(&join, *v)?;
            let mut inputs = join_inputs(&join);
            inputs.insert("v".into(), pair_v(*v));
            Ok(result(
                "periods",
                Value::Object(inputs),
                json!({"periods": render::periods(&p), "unit": "2*pi"}),
                &[JOIN_INDICES, QUOTIENT, "orbit periods: generic 1/m, at D1 K/(v1|w|), at D2 K/(v2|w|) with K = gcd(I_N,|w|)"],
            ))
        }
        Command::Cohomology { family, w, r, k } => cohomology(*family, *w, *r, *k),
        Command::Classes { product, r } => {
            let part = partition_classes(*product, *r)?;
            Ok(result(
                "classes",
                json!({"product": product, "r": r}),
                json!({
                    "product": part.product,
                    "r": part.r,
                    "prime_count": part.prime_count,
                    "member_count": part.members.len(),
                    "members": part.members.iter().map(|w| pair_w(*w)).collect::<Vec<_>>(),
                    "class_count": part.classes.len(),
                    "classes": part.classes.iter().map(|c| {
                        let mut o = json!({
                            "l1": c.l1,
                            "h4_order": big(&c.h4_order),
                            "members": c.members.iter().map(|w| pair_w(*w)).collect::<Vec<_>>(),
                        });
                        if let Some(label) = c.label {
                            o["label"] = json!(label);
                        }
                        o
                    }).collect::<Vec<_>>(),
                }),
                &["coprime w with w1*w2 = W number 2^(k-1) for k distinct primes of W", "classes share l1 and hence the cohomology ring"],
            ))
        }
        Command::Homotopy { w, wprime } => {
            let h = homotopy_equivalent_7(*w, *wprime)?;
            let mut out = json!({
                "verdict": h.verdict.to_string(),
                "h4_orders": [big(&h.h4_orders.0), big(&h.h4_orders.1)],
                "reason": h.reason,
            });
            if let Some(m) = &h.modulus {
                out["modulus"] = big(m);
            }
            if let Some((a, b)) = &h.cubes {
                out["l2_cubes"] = json!([big(a), big(b)]);
            }
            Ok(result(
                "homotopy",
                json!({"w": pair_w(*w), "wprime": pair_w(*wprime)}),
                out,
                &["H^4 = Z_{l1^2 W} over CP^2", "homotopy equivalent iff l2(w')^3 = +-l2(w)^3 in the units mod l1^2 W (odd order)"],
            ))
        }
        Command::P1 { w } => {
            let (res, modulus) = p1_residue(*w)?;
            Ok(result(
                "p1",
                json!({"w": pair_w(*w)}),
                json!({
                    "residue": big(&res),
                    "modulus": big(&modulus),
                    "display": format!("{res} mod {modulus}"),
                }),
                &["p1 = -6|w|^2 mod 9W if 3 does not divide |w|, else -6(|w|/3)^2 mod W"],
            ))
        }
        Command::Homeo { w, wprime } => {
            let compatible = homeo_obstruction(*w, *wprime)?;
            Ok(result(
                "homeo",
                json!({"w": pair_w(*w), "wprime": pair_w(*wprime)}),
                json!({
                    "p1_condition_holds": compatible,
                    "conclusion": if compatible { "not obstructed" } else { "not homeomorphic" },
                }),
                &["a homeomorphism forces 2|w'|^2 = 2|w|^2 mod 3W (W odd)"],
            ))
        }
        Command::KeSolve { base, w } => {
            let join = make_join(&resolve_base(base)?, *w)?;
            let sol = solve_ke_ray(&join, &ctx.precision)?;
            let mut inputs = join_inputs(&join);
            inputs.insert("precision".into(), rational(&ctx.precision));
            Ok(result(
                "ke-solve",
                Value::Object(inputs),
                json!({"join": render::join(&join), "solution": render::ke_solution(&sol, ctx.style)}),
                &[KE_INTEGRAL, STURM, "rational roots give quasi-regular or regular rays, irrational roots irregular rays"],
            ))
        }
        Command::KeDefect { w, v, dn } => {
            let f = ke_defect(*w, *v, *dn)?;
            let (t, c) = ratios(*w, *v);
            Ok(result(
                "ke-defect",
                json!({"w": pair_w(*w), "v": pair_v(*v), "dn": dn}),
                json!({
                    "t": rational(&t),
                    "c": rational(&c),
                    "defect": rational(&f),
                    "einstein": f.is_zero(),
                }),
                &[KE_INTEGRAL],
            ))
        }
        Command::Family { k, dn, base } => {
            let member = quasiregular_family(k, *dn, base.as_ref())?;
            let (a, b) = lemma_integrals(k, *dn);
            let mut out = json!({
                "k": rational(&member.k),
                "t": rational(&member.t),
                "c": rational(&member.c),
                "w": pair_w(member.w),
                "v": pair_v(member.v),
                "integrals": {"a": rational(&a), "b": rational(&b)},
                "defect": rational(&ke_defect(member.w, member.v, *dn)?),
            });
            if *dn == 1 {
                out["t_closed_form"] = rational(&t_from_k_linear(k)?);
            }
            if let Some(join) = &member.join {
                let q = reeb_quotient(join, member.v)?;
                let data = AdmissibleData::from_ray(join, member.v)?;
                out["join"] = render::join(join);
                out["quotient"] = render::quotient(&q);
                out["admissible"] = render::admissible_data(&data);
                out["lambda"] = rational(&data.lambda());
                out["class_condition_residual"] = rational(&data.class_condition_residual());
            }
            let mut inputs = json!({"k": rational(k), "dn": dn});
            if let Some(b) = base {
                inputs["base"] = json!(b.spec_string());
            }
            Ok(result(
                "family",
                inputs,
                out,
                &["t(k) = A/(k B) with A, B the integrals of (1-z)K and (1+z)K, K = ((k+1)+(k-1)z)^d_N", "c = k t", KE_INTEGRAL],
            ))
        }
        Command::Ypq { p, q, from_ab } => {
            let (p, q, from) = match (p, q, from_ab) {
                (Some(p), Some(q), _) => (*p, *q, None),
                (_, _, Some(ab)) => {
                    let (p, q) = ypq_from_ab(ab[0], ab[1])?;
                    (p, q, Some((ab[0], ab[1])))
                }
                _ => return Err(Failure::Usage("give --p and --q, or --from-ab A B".into())),
            };
            let bridge = ypq_bridge(p, q)?;
            let quotient = ypq_quotient(p, q)?;
            let mut inputs = json!({"p": p, "q": q});
            if let Some((a, b)) = from {
                inputs["from_ab"] = json!([a, b]);
            }
            let k = bridge.quasi_regular_k();
            Ok(result(
                "ypq",
                inputs,
                json!({
                    "p": p,
                    "q": q,
                    "w": pair_w(bridge.w),
                    "l1": bridge.l1,
                    "l2": bridge.l2,
                    "quotient_at_diagonal": render::quotient(&quotient),
                    "quasi_regular_k": k.as_ref().map(rational),
                }),
                &["Y^{p,q} = CP^1 join S^3_w with w = (p+q, p-q)/g, l1 = g = gcd(p+q, p-q), l2 = p", QUOTIENT],
            ))
        }
        Command::Soliton { base, w, v, tol } => {
            let join = make_join(&resolve_base(base)?, *w)?;
            let sol = solve_soliton(&join, *v, *tol)?;
            let mut out = Map::new();
            out.insert("g_at_zero".into(), rational(&sol.g_at_zero));
            out.insert("exact_zero".into(), json!(sol.exact_zero));
            if sol.exact_zero {
                out.insert("a_exact".into(), json!("0/1"));
            } else {
                let g = soliton_function(&AdmissibleData::from_ray(&join, *v)?);
                out.insert("bracket_signs".into(), json!([g.sign(sol.a_lo), g.sign(sol.a_hi)]));
            }
            let half = sol.bracket_width / 2.0;
            ctx.style.insert_approx(&mut out, "a", sol.a, half);
            ctx.style.insert_approx(&mut out, "a_lo", sol.a_lo, 0.0);
            ctx.style.insert_approx(&mut out, "a_hi", sol.a_hi, 0.0);
            ctx.style.insert_approx(&mut out, "bracket_width", sol.bracket_width, 0.0);
            let mut inputs = join_inputs(&join);
            inputs.insert("v".into(), pair_v(*v));
            inputs.insert("tol".into(), json!(tol));
            Ok(result(
                "soliton",
                Value::Object(inputs),
                Value::Object(out),
                &[ADMISSIBLE, "soliton condition G(a) = integral over [-1,1] of e^{-a z} ((1-z)/m2 - (1+z)/m1) p(z) = 0", "bracketed bisection with sign-certified endpoints"],
            ))
        }
        Command::Extremal { base, w, v } => {
            let join = make_join(&resolve_base(base)?, *w)?;
            let sol = solve_extremal(&join, *v)?;
            let mut out = render::extremal(&sol);
            out["equals_ke_profile"] = json!(ke_profile(&sol.data) == sol.f);
            let mut inputs = join_inputs(&join);
            inputs.insert("v".into(), pair_v(*v));
            Ok(result(
                "extremal",
                Value::Object(inputs),
                out,
                &[ADMISSIBLE, "extremal profile: F'' = P p with P affine, F(+-1) = 0, F'(-1) = 2p(-1)/m2, F'(1) = -2p(1)/m1", STURM],
            ))
        }
        Command::Enumerate { base, w_max, v_max, regularity, rationality } => {
            let base = resolve_base(base)?;
            enumerate(&base, *w_max, *v_max, *regularity, *rationality, ctx)
        }
    }
}

fn cohomology(
    family: CohomologyFamily,
    w: WeightVector,
    r: u32,
    k: Option<u8>,
) -> Result<CommandResult, Failure> {
    let (ring, mut inputs, extra) = match family {
        CohomologyFamily::Sphere => (
            cohomology_sphere_join(r, w)?,
            json!({"family": "sphere", "w": pair_w(w), "r": r}),
            json!({"l1": sphere_join_l1(r, w)}),
        ),
        CohomologyFamily::Quadric => {
            let (l1, l2) = quadric_join_indices(w);
            (
                cohomology_quadric_join(w)?,
                json!({"family": "quadric", "w": pair_w(w)}),
                json!({"l1": l1, "l2": l2}),
            )
        }
        CohomologyFamily::Delpezzo => {
            let k = k.ok_or_else(|| Failure::Usage("--k is required for --family delpezzo".into()))?;
            (
                cohomology_delpezzo_join(k, w)?,
                json!({"family": "delpezzo", "w": pair_w(w), "k": k}),
                json!({}),
            )
        }
    };
    if family != CohomologyFamily::Delpezzo && k.is_some() {
        inputs["k"] = json!(k);
    }
    let mut out = render::ring(&ring);
    for (key, value) in extra.as_object().into_iter().flatten() {
        out[key] = value.clone();
    }
    Ok(result(
        "cohomology",
        inputs,
        out,
        &["ring presentation of the join from the Leray-Serre computation", "groups by degree derived by Smith normal form"],
    ))
}

fn coprime_weights(w_max: u64) -> Vec<WeightVector> {
    (2..=w_max)
        .flat_map(|w1| (1..w1).filter_map(move |w2| WeightVector::new(w1, w2).ok()))
        .collect()
}

fn enumerate(
    base: &FanoBase,
    w_max: u64,
    v_max: u64,
    regularity: Option<RegularityFilter>,
    rationality: Option<RationalityFilter>,
    ctx: &Context,
) -> Result<CommandResult, Failure> {
    let weights = coprime_weights(w_max);
    let rays: Vec<ReebRay> = (1..=v_max)
        .flat_map(|v1| (1..=v_max).filter_map(move |v2| ReebRay::new(v1, v2).ok()))
        .collect();
    let mut entries: Vec<(WeightVector, Value)> = weights
        .par_iter()
        .map(|&w| enumerate_one(base, w, &rays, regularity, rationality, ctx))
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .flatten()
        .collect();
    entries.sort_by_key(|(w, _)| (w.w1(), w.w2()));
    let ray_total: usize = entries
        .iter()
        .map(|(_, e)| e["rays"].as_array().map_or(0, Vec::len))
        .sum();
    let mut inputs = json!({
        "base": base.spec_string(),
        "w_max": w_max,
        "v_max": v_max,
        "precision": rational(&ctx.precision),
    });
    if let Some(r) = regularity {
        inputs["regularity"] = json!(regularity_name(r));
    }
    if let Some(r) = rationality {
        inputs["rationality"] = json!(rationality_name(r));
    }
    Ok(result(
        "enumerate",
        inputs,
        json!({
            "weight_count": entries.len(),
            "ray_count": ray_total,
            "entries": entries.into_iter().map(|(_, e)| e).collect::<Vec<_>>(),
        }),
        &[JOIN_INDICES, QUOTIENT, KE_INTEGRAL, STURM],
    ))
}

fn regularity_name(r: RegularityFilter) -> &'static str {
    match r {
        RegularityFilter::Regular => "regular",
        RegularityFilter::QuasiRegular => "quasi_regular",
    }
}

fn rationality_name(r: RationalityFilter) -> &'static str {
    match r {
        RationalityFilter::Rational => "rational",
        RationalityFilter::Irrational => "irrational",
    }
}

fn ke_summary(sol: &KeSolution, ctx: &Context) -> Vec<Value> {
    sol.roots
        .iter()
        .map(|root| {
            let mut o = Map::new();
            o.insert("classification".into(), json!(root.classification.to_string()));
            match (&root.v, root.is_rational()) {
                (Some(v), true) => {
                    o.insert("v".into(), pair_v(*v));
                }
                _ => {
                    if let sasaki_join::admissible::RootValue::Interval(iv) = &root.value {
                        o.insert("interval".into(), render::interval(iv));
                        ctx.style.insert_approx(&mut o, "approx", iv.approx(), to_f64(&iv.width()) / 2.0);
                    }
                }
            }
            Value::Object(o)
        })
        .collect()
}

fn enumerate_one(
    base: &FanoBase,
    w: WeightVector,
    rays: &[ReebRay],
    regularity: Option<RegularityFilter>,
    rationality: Option<RationalityFilter>,
    ctx: &Context,
) -> Result<Option<(WeightVector, Value)>, Error> {
    let join = make_join(base, w)?;
    let sol = solve_ke_ray(&join, &ctx.precision)?;
    let has_rational = sol.roots.iter().any(|r| r.is_rational());
    let has_irrational = sol.roots.iter().any(|r| r.classification == RayClass::Irregular);
    match rationality {
        Some(RationalityFilter::Rational) if !has_rational => return Ok(None),
        Some(RationalityFilter::Irrational) if !has_irrational => return Ok(None),
        _ => {}
    }
    let (t, _) = ratios(w, ReebRay::new(1, 1)?);
    let mut kept = Vec::new();
    for &v in rays {
        let (_, c) = ratios(w, v);
        if c == t {
            continue;
        }
        let q = reeb_quotient(&join, v)?;
        let keep = match regularity {
            Some(RegularityFilter::Regular) => q.regularity == Regularity::Regular,
            Some(RegularityFilter::QuasiRegular) => q.regularity != Regularity::Regular,
            None => true,
        };
        if !keep {
            continue;
        }
        let defect = ke_defect(w, v, base.d_n)?;
        kept.push(json!({
            "v": pair_v(v),
            "regularity": q.regularity.to_string(),
            "n": q.signed_degree().to_string(),
            "m1": q.m1,
            "m2": q.m2,
            "einstein": defect.is_zero(),
        }));
    }
    if regularity.is_some() && kept.is_empty() {
        return Ok(None);
    }
    Ok(Some((
        w,
        json!({
            "w": pair_w(w),
            "l1": join.l1,
            "l2": join.l2,
            "ke_roots": ke_summary(&sol, ctx),
            "rays": kept,
        }),
    )))
}

