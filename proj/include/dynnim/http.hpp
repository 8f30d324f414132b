#pragma once

#include "httplib.h"

#include "dynnim/service.hpp"

namespace dynnim::service {

// Mounts the REST API under /api/v1 on `server`. `service` must outlive it.
void register_routes(httplib::Server& server, PlayService& service);

}  // namespace dynnim::service
