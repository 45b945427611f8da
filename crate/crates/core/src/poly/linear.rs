use std::fmt;

use num_traits::{One, Zero};

use super::multi_index::MultiIndex;
use super::point::Point;
use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{canonical_null_vector, ExactMatrix};

/// `c + a_1 x_1 + … + a_d x_d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    pub constant: Rational,
    pub coefficients: Vec<Rational>,
}

impl LinearForm {
    pub fn new(constant: Rational, coefficients: Vec<Rational>) -> Self {
        LinearForm { constant, coefficients }
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        check_dim(self.dim(), point.dim())?;
        Ok(self
            .coefficients
            .iter()
            .zip(point.coords())
            .fold(self.constant.clone(), |acc, (a, x)| acc + a * x))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let d = self.dim();
        let terms = std::iter::once((MultiIndex::zero(d), self.constant.clone()))
            .chain(self.coefficients.iter().enumerate().map(|(i, a)| (MultiIndex::unit(d, i), a.clone())));
        Polynomial::from_terms(d, terms).expect("terms share the form's dimension")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// A nonzero linear form vanishing at every given point.
///
/// Rows `[1, x_1, …, x_d]` of the homogenized points are stacked and the
/// canonical nullspace vector is taken: smallest leading index in the order
/// (constant, x_1, …, x_d), leading coefficient 1.
pub fn hyperplane_through(points: &[Point], dim: usize) -> Result<LinearForm> {
    if points.is_empty() || points.len() > dim {
        return Err(Error::InvalidArgument(format!(
            "hyperplane needs between 1 and {dim} points, got {}",
            points.len()
        )));
    }
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        check_dim(dim, p.dim())?;
        let mut row = Vec::with_capacity(dim + 1);
        row.push(Rational::one());
        row.extend(p.coords().iter().cloned());
        rows.push(row);
    }
    let matrix = ExactMatrix::from_rows(rows)?;
    let v = canonical_null_vector(&matrix)
        .ok_or_else(|| Error::InvalidArgument("points admit no vanishing hyperplane".into()))?;
    let mut it = v.into_iter();
    let constant = it.next().expect("vector has d+1 entries");
    Ok(LinearForm::new(constant, it.collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn axis_line_in_plane() {
        let l =
            hyperplane_through(&[Point::from_integers(&[0, 0]), Point::from_integers(&[1, 0])], 2).unwrap();
        assert_eq!(l, LinearForm::new(int(0), vec![int(0), int(1)]));
    }

    #[test]
    fn simplex_face() {
        let pts = [
            Point::from_integers(&[1, 0, 0]),
            Point::from_integers(&[0, 1, 0]),
            Point::from_integers(&[0, 0, 1]),
        ];
        let l = hyperplane_through(&pts, 3).unwrap();
        assert_eq!(l, LinearForm::new(int(1), vec![int(-1), int(-1), int(-1)]));
        assert_eq!(l.to_polynomial().to_string(), "-x1 - x2 - x3 + 1");
    }

    #[test]
    fn underdetermined_pick_is_canonical() {
        let pts = [Point::from_integers(&[0, 0, 0]), Point::from_integers(&[1, 0, 0])];
        let l = hyperplane_through(&pts, 3).unwrap();
        for p in &pts {
            assert!(l.evaluate(p).unwrap().is_zero());
        }
        // free columns x2, x3; x2 comes first
        assert_eq!(l, LinearForm::new(int(0), vec![int(0), int(1), int(0)]));
    }

    #[test]
    fn rejects_bad_counts() {
        assert!(hyperplane_through(&[], 2).is_err());
        let three =
            [Point::from_integers(&[0, 0]), Point::from_integers(&[1, 0]), Point::from_integers(&[0, 1])];
        assert!(hyperplane_through(&three, 2).is_err());
    }
}
