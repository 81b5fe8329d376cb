//! Exact arithmetic in Q and GF(p).

use repro_matrix::scalar::enumerate_field;
use repro_matrix::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldSpec::Rationals;
    let half = q.parse_scalar("1/2")?;
    let third = q.parse_scalar("1/3")?;
    println!("in {q}: 1/2 + 1/3 = {}", half.try_add(&third)?);
    println!("in {q}: 6/8 reads as {}", q.parse_scalar("6/8")?);

    let gf7: FieldSpec = "GF(7)".parse()?;
    let two = gf7.from_i64(2);
    let four = gf7.from_i64(4);
    println!("in {gf7}: 2 / 4 = {}", two.try_div(&four)?);
    println!("in {gf7}: -1 reads as {}", gf7.parse_scalar("-1")?);

    let gf3 = FieldSpec::prime(3)?;
    let elements: Vec<String> = enumerate_field(gf3)?.iter().map(ToString::to_string).collect();
    println!("elements of {gf3}: {}", elements.join(", "));

    // mixing fields is an error, not a silent coercion
    println!("1/2 + 2 across fields: {:?}", half.try_add(&two).map_err(|e| e.to_string()));
    println!("1/0: {:?}", q.parse_scalar("1/0").map_err(|e| e.to_string()));
    Ok(())
}
