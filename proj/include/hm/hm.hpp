#pragma once

#include <hm/gaussian_rational.hpp>
#include <hm/index_basis.hpp>
#include <hm/element.hpp>
#include <hm/parse.hpp>
#include <hm/linalg.hpp>
#include <hm/parallel.hpp>
#include <hm/transference.hpp>
#include <hm/univariate.hpp>
#include <hm/modules_engine.hpp>
#include <hm/oracle.hpp>
#include <hm/operators.hpp>
#include <hm/bidisc_lab.hpp>
#include <hm/report.hpp>
#include <hm/verify.hpp>
