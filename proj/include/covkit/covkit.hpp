#pragma once

#include "covkit/adversarial.hpp"
#include "covkit/binomial.hpp"
#include "covkit/certificate.hpp"
#include "covkit/completion.hpp"
#include "covkit/distance_lab.hpp"
#include "covkit/io.hpp"
#include "covkit/oracle.hpp"
#include "covkit/rational.hpp"
#include "covkit/reconstruct.hpp"
#include "covkit/rng.hpp"
#include "covkit/set_function.hpp"
#include "covkit/simplex.hpp"
#include "covkit/subset.hpp"
#include "covkit/symmetric.hpp"
#include "covkit/wtransform.hpp"
