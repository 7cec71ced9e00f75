/** Wire types of the gateway JSON API, mirrored verbatim. */

export interface DigitInfo {
  property: string;
  values: string[];
}

export interface SpaceInfo {
  name: string;
  digits: DigitInfo[];
}

export interface StatsRow {
  endpoint_messages: number;
  logical_hops: number;
  distinct_endpoint_nodes: number;
}

export interface SampleEntryState {
  doc_id: string | null;
  descriptor: string;
  labels: [number, number][];
  miniature_url: string | null;
}

export interface SessionState {
  session_id: string;
  current: string;
  finished: boolean;
  history: [number, number][];
  stats: StatsRow;
  final_stats: StatsRow | null;
  sample: SampleEntryState[];
}

export interface CreateSessionResponse {
  session_id: string;
  state: SessionState;
}

export interface LocationRow {
  doc_id: string;
  descriptor: string;
  owner: string;
}

export interface FinishResponse {
  locations: LocationRow[];
  stats: StatsRow | null;
}

export interface NetworkStats {
  nodes: number;
  documents: number;
  counters: {
    logical_hops: number;
    messages_created: number;
    endpoint_deliveries: number;
  };
}
