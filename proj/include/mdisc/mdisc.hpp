#ifndef MDISC_MDISC_HPP
#define MDISC_MDISC_HPP

#include "errors.hpp"
#include "rational.hpp"
#include "monomial.hpp"
#include "polynomial.hpp"
#include "gcd.hpp"
#include "parse.hpp"
#include "quadratic_rank.hpp"
#include "initial_form.hpp"
#include "cdv.hpp"
#include "blowup.hpp"
#include "blowup_script.hpp"
#include "certificate_io.hpp"
#include "cli.hpp"

#endif  // MDISC_MDISC_HPP
