#pragma once

// Umbrella header: exact construction and evaluation of two-level designs
// built from quaternary codes, with complementary-set selection and an
// exhaustive search oracle.

#include "qcdesign/exact.hpp"
#include "qcdesign/z4.hpp"
#include "qcdesign/gray.hpp"
#include "qcdesign/wlp.hpp"
#include "qcdesign/compset.hpp"
#include "qcdesign/binmat.hpp"
#include "qcdesign/regsel.hpp"
#include "qcdesign/oracle.hpp"
#include "qcdesign/io.hpp"
