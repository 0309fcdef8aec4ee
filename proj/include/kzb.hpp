#pragma once

#include "kzb/alphabet.hpp"
#include "kzb/errors.hpp"
#include "kzb/extdecomp.hpp"
#include "kzb/freelie.hpp"
#include "kzb/hain.hpp"
#include "kzb/hecke.hpp"
#include "kzb/linalg.hpp"
#include "kzb/ncseries.hpp"
#include "kzb/numeric/dch.hpp"
#include "kzb/numeric/iterint.hpp"
#include "kzb/numeric/linearized.hpp"
#include "kzb/numeric/period.hpp"
#include "kzb/numeric/polylog.hpp"
#include "kzb/numeric/star.hpp"
#include "kzb/polyquot.hpp"
#include "kzb/rational.hpp"
#include "kzb/real.hpp"
#include "kzb/roots.hpp"
#include "kzb/series.hpp"
#include "kzb/sym.hpp"
