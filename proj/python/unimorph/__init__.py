# Copyright 2026 The UniMorph Toolkit Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""UniMorph 4.0 annotation toolkit bindings."""

try:
    from ._unimorph import *  # noqa: F401,F403  (installed layout)
    from ._unimorph import __version__, schema_version  # noqa: F401
except ImportError:  # build-tree layout: the module sits next to the tests
    from _unimorph import *  # noqa: F401,F403
    from _unimorph import __version__, schema_version  # noqa: F401
