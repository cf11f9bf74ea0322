#pragma once

#include <kdfkit/catalog.hpp>
#include <kdfkit/compensated.hpp>
#include <kdfkit/errors.hpp>
#include <kdfkit/gamma.hpp>
#include <kdfkit/gamma_sum.hpp>
#include <kdfkit/report.hpp>
#include <kdfkit/series.hpp>
#include <kdfkit/summation.hpp>
#include <kdfkit/verifier.hpp>
#include <kdfkit/wide.hpp>
#include <kdfkit/wynn.hpp>
