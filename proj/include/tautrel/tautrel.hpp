#ifndef TAUTREL_TAUTREL_HPP
#define TAUTREL_TAUTREL_HPP

#include <tautrel/exact.hpp>
#include <tautrel/series.hpp>
#include <tautrel/coeffs.hpp>
#include <tautrel/kappa.hpp>
#include <tautrel/tautring.hpp>
#include <tautrel/relations.hpp>
#include <tautrel/verify.hpp>
#include <tautrel/io.hpp>

#endif
