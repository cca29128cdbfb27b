package com.demo.core;

import com.demo.io.ArraySource;
import com.demo.io.Record;
import com.demo.io.Source;
import com.demo.util.Checksum;

public class Engine {
    private Pipeline pipeline;
    private Checksum checksum;
    private boolean running;

    public Engine(Pipeline pipeline) {
        this.pipeline = pipeline;
        this.checksum = new Checksum();
        this.running = false;
    }

    public int consume(Source source, int batchSize) {
        if (batchSize <= 0) {
            throw new IllegalArgumentException("batchSize must be positive");
        }
        running = true;
        int total = 0;
        Record[] batch = new Record[batchSize];
        int fill = 0;
        while (source.hasNext()) {
            batch[fill] = source.next();
            checksum.updateInt(fill);
            fill++;
            if (fill == batchSize) {
                total += pipeline.push(batch);
                batch = new Record[batchSize];
                fill = 0;
            }
        }
        if (fill > 0) {
            Record[] tail = new Record[fill];
            for (int i = 0; i < fill; i++) {
                tail[i] = batch[i];
            }
            total += pipeline.push(tail);
        }
        running = false;
        return total;
    }

    public int replay(Record[] records) {
        Source s = new ArraySource(records);
        return consume(s, 8);
    }

    public boolean isRunning() { return running; }

    public long fingerprint() {
        return checksum.digest();
    }
}
