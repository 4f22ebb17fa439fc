import uuid
from datetime import datetime, timezone

from sqlalchemy import Boolean, Column, DateTime, Float, Integer, String

try:
    from Database.core import Base
except ImportError:
    from ..Database.core import Base


class RunRecordRow(Base):
    """One scored benchmark run."""

    __tablename__ = "run_records"

    id = Column(String(36), primary_key=True, default=lambda: str(uuid.uuid4()))
    experiment = Column(String, nullable=False, index=True)
    created_at = Column(DateTime, default=lambda: datetime.now(timezone.utc))

    schema_version = Column(Integer, nullable=False)
    p = Column(Integer, nullable=False)
    n = Column(Integer, nullable=False)
    # sqlite column names ignore case, so N cannot share a name with n
    N = Column("expected_degree", Float, nullable=False)
    alpha = Column(Float, nullable=False)
    variant = Column(String, nullable=False)
    repetition = Column(Integer, nullable=False)
    seed = Column(Integer, nullable=False)

    tp = Column(Integer)
    fp = Column(Integer)
    tn = Column(Integer)
    fn = Column(Integer)
    tpr = Column(Float)
    fpr = Column(Float)
    tdr = Column(Float)
    tdr_defined = Column(Boolean)
    acc = Column(Float)
    shd = Column(Integer)
    n_ambiguous = Column(Integer)
    ci_tests = Column(Integer)
    runtime_ms = Column(Float)
    error = Column(String)
