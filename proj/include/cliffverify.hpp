#pragma once

#include "cliffverify/rational.hpp"
#include "cliffverify/multivector.hpp"
#include "cliffverify/polynomial.hpp"
#include "cliffverify/linalg.hpp"
#include "cliffverify/radial.hpp"
#include "cliffverify/spaces.hpp"
#include "cliffverify/integrate.hpp"
#include "cliffverify/operators.hpp"
#include "cliffverify/moebius.hpp"
#include "cliffverify/random.hpp"
#include "cliffverify/stokes.hpp"
#include "cliffverify/serialize.hpp"
#include "cliffverify/verify.hpp"
