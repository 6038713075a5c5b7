#pragma once

#include "errors.hpp"
#include "geometry.hpp"
#include "germ.hpp"
#include "jet.hpp"
#include "linalg.hpp"
#include "local_algebra.hpp"
#include "monomial.hpp"
#include "monomial_order.hpp"
#include "parser.hpp"
#include "poly.hpp"
#include "presentation.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "roots.hpp"
#include "version.hpp"
