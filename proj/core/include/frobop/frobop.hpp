#ifndef FROBOP_FROBOP_HPP
#define FROBOP_FROBOP_HPP

#include "frobop/chain.hpp"
#include "frobop/context.hpp"
#include "frobop/diffop.hpp"
#include "frobop/errors.hpp"
#include "frobop/field.hpp"
#include "frobop/frobenius.hpp"
#include "frobop/ideal.hpp"
#include "frobop/oracle.hpp"
#include "frobop/parser.hpp"
#include "frobop/poly.hpp"

#endif
