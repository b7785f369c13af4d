//! Period-monomial normalization: CM-period rules, norm periods, extreme
//! local periods, and global-to-local splitting.
//!
//! Run with `cargo run --example monomial_normalization`.

use periodcalc::period::{
    normalize, CharacterExpr, Datum, PeriodContext, PeriodMonomial, PeriodSymbol,
};
use periodcalc::shape::{CMShape, Embedding, PlaceId};

fn show(ctx: &PeriodContext, label: &str, m: &PeriodMonomial) {
    let (nf, _) = normalize(ctx, m).unwrap();
    println!("{label}\n    {}\n -> {}\n", m.describe(ctx), nf.describe(ctx));
}

fn main() {
    let mut ctx = PeriodContext::new(CMShape::with_default_labels(2));
    let rep = ctx.register_rep("Pi", 3);
    let xi = CharacterExpr::basis(ctx.central_char(rep));
    let barred = Embedding::barred(PlaceId(0));
    let unbarred = Embedding::unbarred(PlaceId(0));

    // Conjugate self-dual character at the conjugate embedding inverts.
    let m = PeriodMonomial::symbol(PeriodSymbol::CmPeriod {
        character: xi.check(&ctx),
        datum: Datum::singleton(barred),
    })
    .mul(&PeriodMonomial::symbol(PeriodSymbol::CmPeriod {
        character: xi.check(&ctx),
        datum: Datum::singleton(unbarred),
    }));
    show(&ctx, "p(check(xi), conj) * p(check(xi), plain):", &m);

    // The distinguished algebraic character picks up a power of 2πi.
    let psi_check = CharacterExpr::basis(ctx.psi_char()).check(&ctx);
    let m = PeriodMonomial::symbol(PeriodSymbol::CmPeriod {
        character: psi_check,
        datum: Datum::singleton(barred),
    });
    show(&ctx, "p(check(psi), conj):", &m);

    // Extreme local periods collapse into CM periods and cancel in pairs.
    let mut m = PeriodMonomial::symbol(PeriodSymbol::ArithLocal {
        rep,
        sup: 0,
        embedding: unbarred,
    });
    m.insert(
        PeriodSymbol::ArithLocal {
            rep,
            sup: 3,
            embedding: unbarred,
        },
        1,
    );
    show(&ctx, "P^(0) * P^(3):", &m);

    // Global periods split over the CM type.
    let m = PeriodMonomial::symbol(PeriodSymbol::ArithGlobal {
        rep,
        signature: vec![1, 0],
    });
    show(&ctx, "P^(I) for I = (1, 0):", &m);
}
