#pragma once

#include "qfiber/common.hpp"
#include "qfiber/heisenberg.hpp"
#include "qfiber/partitions.hpp"
#include "qfiber/qbinomial.hpp"
#include "qfiber/surjections.hpp"
#include "qfiber/verify.hpp"
