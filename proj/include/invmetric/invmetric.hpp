#pragma once

#include "invmetric/core.hpp"
#include "invmetric/domains.hpp"
#include "invmetric/conformal.hpp"
#include "invmetric/zipper.hpp"
#include "invmetric/annulus.hpp"
#include "invmetric/bergman.hpp"
#include "invmetric/shortest_path.hpp"
#include "invmetric/distances.hpp"
#include "invmetric/bounds.hpp"
#include "invmetric/domain_json.hpp"
#include "invmetric/experiments.hpp"
#include "invmetric/report.hpp"
