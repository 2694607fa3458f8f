from sqlalchemy import Column, Integer, String, DateTime, Text, Float
from sqlalchemy.orm import declarative_base
from datetime import datetime, timezone

Base = declarative_base()

def _now():
    return datetime.now(timezone.utc)

class ExplorationRecord(Base):
    __tablename__ = "explorations"
    
    id = Column(Integer, primary_key=True, index=True)
    topology = Column(String, nullable=False, index=True)
    rule = Column(String, nullable=False)
    seed = Column(String, nullable=False)  # 64-bit seeds overflow signed SQLite integers
    sample_index = Column(Integer, nullable=False)
    rank_matrix = Column(String, nullable=False)  # rows joined by '/'
    score = Column(Float, nullable=False, index=True)
    classification = Column(String, nullable=False)
    final_density = Column(Float, nullable=False)
    final_activity = Column(Float, nullable=False)
    created_at = Column(DateTime, default=_now)

class CensusRecord(Base):
    __tablename__ = "censuses"
    
    id = Column(Integer, primary_key=True, index=True)
    topology = Column(String, nullable=False, index=True)
    samples = Column(Integer, nullable=False)
    seed = Column(String, nullable=False)
    realizable = Column(Integer, nullable=False)
    solver_failures = Column(Integer, nullable=False)
    proportion = Column(Float, nullable=False)
    half_width = Column(Float, nullable=False)
    created_at = Column(DateTime, default=_now)

class SimulationRecord(Base):
    __tablename__ = "simulations"
    
    id = Column(Integer, primary_key=True, index=True)
    manifest = Column(Text, nullable=False)  # RunManifest JSON
    steps = Column(Integer, nullable=False)
    final_density = Column(Float, nullable=False)
    final_digest = Column(String, nullable=False)
    classification = Column(String, nullable=True)
    created_at = Column(DateTime, default=_now)
