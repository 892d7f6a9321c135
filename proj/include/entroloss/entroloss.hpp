#pragma once

#include "entroloss/operator.hpp"
#include "entroloss/info.hpp"
#include "entroloss/majorization.hpp"
#include "entroloss/energy.hpp"
#include "entroloss/channels.hpp"
#include "entroloss/roof.hpp"
#include "entroloss/sequence.hpp"
#include "entroloss/suites.hpp"
#include "entroloss/report.hpp"
