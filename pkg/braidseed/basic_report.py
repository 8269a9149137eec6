from __future__ import annotations

import hashlib
import json
import re


class BasicReport:
    DOMAIN = ""

    def __init__(self, name, object_id=None, unique_id=None):
        self.name = name
        self._assigned_object_id = object_id
        self._assigned_unique_id = unique_id

    @property
    def object_id(self):
        if self._assigned_object_id is not None:
            return self._assigned_object_id
        obj_id = self.name.lower()
        obj_id = re.sub(r"\s+", "_", obj_id)
        obj_id = re.sub(r"[^\w]", "", obj_id)
        self._assigned_object_id = obj_id
        return obj_id

    @property
    def unique_id(self):
        if self._assigned_unique_id is not None:
            return self._assigned_unique_id
        m = hashlib.sha256()
        m.update(self.DOMAIN.encode())
        m.update(self.object_id.encode())
        m.update(self.fingerprint().encode())
        uid = m.hexdigest()[0:16]
        self._assigned_unique_id = uid
        return uid

    @property
    def json_id(self):
        return f"{self.DOMAIN}-{self.object_id}"

    def fingerprint(self):
        """Canonical text of the inputs the report was computed from."""
        return ""

    def payload(self):
        return {}

    def to_dict(self):
        return {"id": self.json_id, "unique_id": self.unique_id, **self.payload()}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"
