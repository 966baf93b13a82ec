#pragma once

#include "qncert/certificates.hpp"
#include "qncert/coset.hpp"
#include "qncert/element.hpp"
#include "qncert/errors.hpp"
#include "qncert/group.hpp"
#include "qncert/group_algebra.hpp"
#include "qncert/harmonic.hpp"
#include "qncert/lattice.hpp"
#include "qncert/quasinormalizer.hpp"
#include "qncert/random.hpp"
#include "qncert/stallings.hpp"
#include "qncert/subgroup.hpp"
#include "qncert/sweep.hpp"
#include "qncert/triple.hpp"
