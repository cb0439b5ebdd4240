#ifndef MONOMEQ_MONOMEQ_HPP
#define MONOMEQ_MONOMEQ_HPP

#include "monomeq/eigen.hpp"
#include "monomeq/errors.hpp"
#include "monomeq/fixtures.hpp"
#include "monomeq/halfnormal.hpp"
#include "monomeq/masa.hpp"
#include "monomeq/matrix.hpp"
#include "monomeq/monomial.hpp"
#include "monomeq/monomial_form.hpp"
#include "monomeq/polar.hpp"
#include "monomeq/random.hpp"
#include "monomeq/search.hpp"
#include "monomeq/tolerance.hpp"

#endif  // MONOMEQ_MONOMEQ_HPP
