//! Shared flag handling: field descriptors, plan construction (with
//! automatic splitting-field extension), and code construction.

use clap::Args;

use constaq_core::codes::{bch_code, code_from_zero_set, ConstacyclicCode};
use constaq_core::error::Error;
use constaq_core::field::{
    parse_field_descriptor, Field, FieldElement, FieldEmbedding, FieldOps, FieldSpec,
};
use constaq_core::poly::{multiplicative_order_mod, Polynomial};
use constaq_core::transform::TransformPlan;
use constaq_core::Result;

#[derive(Args, Debug, Clone)]
pub struct PlanArgs {
    /// Field descriptor, e.g. GF(27;1,2,0,1;s=1) or GF(9)
    #[arg(long)]
    pub field: String,
    /// Block length
    #[arg(long)]
    pub n: usize,
    /// λ as an element of the field (w^k, 0, 1, -1, or digits)
    #[arg(long)]
    pub lambda: Option<String>,
    /// β with β^n = λ; discovered from λ when omitted
    #[arg(long)]
    pub beta: Option<String>,
    /// ξ of multiplicative order n; canonical power of w when omitted
    #[arg(long)]
    pub xi: Option<String>,
    /// Code alphabet subfield degree s (defaults to the descriptor's s)
    #[arg(long)]
    pub s: Option<usize>,
}

/// A plan plus the field the user named (which may be a subfield of the
/// computation field after automatic extension).
pub struct PlanContext {
    pub plan: TransformPlan,
    pub user_field: Field,
    /// Present when the computation field extends the user field.
    pub embedding: Option<FieldEmbedding>,
    /// Alphabet degree inside the computation field.
    pub s: usize,
}

impl PlanContext {
    /// Render an element of the computation field in the user's notation
    /// when it lies in the embedded subfield.
    pub fn show_element(&self, e: &FieldElement) -> String {
        match &self.embedding {
            None => e.to_string(),
            Some(emb) => match emb.project(e) {
                Ok(small) => small.to_string(),
                Err(_) => e.to_string(),
            },
        }
    }

    pub fn show_poly(&self, p: &Polynomial) -> String {
        if self.embedding.is_none() {
            return p.to_string();
        }
        if p.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = self.show_element(c);
            let body = match i {
                0 => cs,
                1 if cs == "1" => "x".into(),
                1 => format!("{cs}*x"),
                _ if cs == "1" => format!("x^{i}"),
                _ => format!("{cs}*x^{i}"),
            };
            parts.push(body);
        }
        parts.join(" + ")
    }
}

pub fn build_plan(args: &PlanArgs) -> Result<PlanContext> {
    let user_field = parse_field_descriptor(&args.field)?;
    let s_user = args.s.unwrap_or(user_field.s());
    if user_field.kprime() % s_user != 0 {
        return Err(Error::NoSuchSubfield {
            s: s_user,
            kprime: user_field.kprime(),
        });
    }
    let lambda_user = match (&args.beta, &args.lambda) {
        (Some(beta), _) => {
            let b = user_field.parse_element(beta)?;
            b.pow(args.n as i64)?
        }
        (None, Some(lambda)) => user_field.parse_element(lambda)?,
        (None, None) => user_field.one(),
    };
    if lambda_user.is_zero() {
        return Err(Error::ZeroLambda);
    }
    // does the user field already contain an order-n root of unity?
    let q = user_field.size();
    let needs_extension = args.n as u64 % user_field.p() != 0 && (q - 1) % args.n as u64 != 0;
    if !needs_extension {
        let plan = match &args.beta {
            Some(beta) => {
                let b = user_field.parse_element(beta)?;
                let xi = args
                    .xi
                    .as_ref()
                    .map(|x| user_field.parse_element(x))
                    .transpose()?;
                TransformPlan::new(&user_field, args.n, b, xi)?
            }
            None => TransformPlan::from_lambda(&user_field, args.n, &lambda_user)?,
        };
        return Ok(PlanContext {
            plan,
            user_field,
            embedding: None,
            s: s_user,
        });
    }
    // extend to the splitting field of x^n - λ: degree ord_q(n·ord(λ))
    if args.n as u64 % user_field.p() == 0 {
        return Err(Error::RepeatedRootPlan);
    }
    let ord_lambda = if lambda_user.is_zero() {
        return Err(Error::ZeroLambda);
    } else {
        lambda_user.multiplicative_order()?
    };
    let capital_n = args.n as u64 * ord_lambda;
    let m = multiplicative_order_mod(q, capital_n) as usize;
    let big = FieldSpec::build(
        user_field.p(),
        user_field.kprime() * m,
        None,
        user_field.kprime(),
    )?;
    let embedding = FieldEmbedding::new(&user_field, &big)?;
    let lambda_big = embedding.embed(&lambda_user)?;
    let plan = match &args.beta {
        Some(beta) => {
            let b = embedding.embed(&user_field.parse_element(beta)?)?;
            TransformPlan::new(&big, args.n, b, None)?
        }
        None => TransformPlan::from_lambda(&big, args.n, &lambda_big)?,
    };
    // the alphabet subfield scales with the embedding
    let s_big = s_user;
    Ok(PlanContext {
        plan,
        user_field,
        embedding: Some(embedding),
        s: s_big,
    })
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    #[command(flatten)]
    pub plan: PlanArgs,
    /// Zero set as ξ-exponents, e.g. 0,1,2,3 (must be conjugacy closed)
    #[arg(long, value_delimiter = ',')]
    pub zero_set: Option<Vec<usize>>,
    /// First exponent of a designed consecutive root run
    #[arg(long)]
    pub b: Option<usize>,
    /// Designed distance δ (run length δ-1)
    #[arg(long)]
    pub delta: Option<usize>,
}

pub fn build_code(args: &CodeArgs) -> Result<(PlanContext, ConstacyclicCode)> {
    let ctx = build_plan(&args.plan)?;
    let code = match (&args.zero_set, args.b, args.delta) {
        (Some(zs), _, _) => code_from_zero_set(&ctx.plan, ctx.s, zs)?,
        (None, b, Some(delta)) => bch_code(&ctx.plan, ctx.s, b.unwrap_or(1), delta)?,
        _ => {
            return Err(Error::Parse(
                "provide --zero-set or --delta (with optional --b)".into(),
            ))
        }
    };
    Ok((ctx, code))
}

/// Parse a comma list of elements in the plan's computation field,
/// embedding from the user field when extended.
pub fn parse_vector(ctx: &PlanContext, text: &str) -> Result<Vec<FieldElement>> {
    text.split(',')
        .map(|t| {
            let small = ctx.user_field.parse_element(t.trim())?;
            match &ctx.embedding {
                None => Ok(small),
                Some(emb) => emb.embed(&small),
            }
        })
        .collect()
}
