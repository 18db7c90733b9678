#ifndef HYPERCF_HYPERCF_HPP
#define HYPERCF_HYPERCF_HPP

#include "analytics.hpp"
#include "cf.hpp"
#include "construction.hpp"
#include "field.hpp"
#include "mkaouar.hpp"
#include "poly.hpp"
#include "report.hpp"
#include "series.hpp"

#endif
